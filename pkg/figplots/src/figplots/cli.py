"""Command line: render one figure CSV to PNG and SVG."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureJob, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figplots",
        description="Render blockade sweep CSVs as publication-style figures.",
    )
    parser.add_argument("figure_id", choices=sorted(FIGURE_IDS))
    parser.add_argument("csv", help="input CSV from the blockade CLI")
    parser.add_argument(
        "--out", default=None,
        help="output base path (default: CSV path without extension)",
    )
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out_base = args.out if args.out else args.csv.rsplit(".", 1)[0]
    try:
        result = render(FigureJob(args.csv, args.figure_id, out_base))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {result.png_path} and {result.svg_path} "
          f"({result.panel_count} panels)")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
