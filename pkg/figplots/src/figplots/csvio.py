"""Reading the sweep/dressed CSV files produced by the blockade CLI."""

from __future__ import annotations

from pathlib import Path

import numpy as np


def read_columns(path: str | Path) -> dict[str, np.ndarray]:
    """Parse a CSV into named float columns.

    Raises ``ValueError`` for an empty file (no data rows) and for rows
    whose width disagrees with the header.
    """
    text = Path(path).read_text().strip()
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError(f"empty CSV (no data rows): {path}")
    header = [h.strip() for h in lines[0].split(",")]
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(
                f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}"
            )
        rows.append([float(c) for c in cells])
    data = np.asarray(rows, dtype=float)
    return {name: data[:, i] for i, name in enumerate(header)}


def require_columns(
    cols: dict[str, np.ndarray], needed: tuple[str, ...], path: str | Path
) -> None:
    """Fail with the first missing column named."""
    for name in needed:
        if name not in cols:
            raise ValueError(f"missing column {name!r} in {path}")
