"""CSV-to-figure rendering for the blockade sweep presets.

Strictly a plotting layer: every number comes from the CSV.  One- and
two-axis sweeps become line plots and heatmaps (log10 color scales for the
correlation panels); the dressed scans become eigenvalue-branch fans.
Output is deterministic: fixed style, fixed SVG hash salt, no timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import read_columns, require_columns

plt.rcParams.update(
    {
        "svg.hashsalt": "figplots",
        "figure.dpi": 110,
        "axes.grid": True,
        "grid.alpha": 0.3,
    }
)

METRICS = ("meanN", "g2", "g3", "log10g2", "log10g3", "residual")

#: figure id -> (kind, axis names...) used to pick the layout
_LINE_FIGS = {"fig3a": "omegaD", "fig3b": "J", "fig5": None}
_HEAT_FIGS = {
    "fig4": ("delta", "J", ("meanN", "log10g2", "log10g3")),
    "fig6": ("g", "J", ("log10g2", "log10g3", "meanN")),
    "fig7L": ("delta", "omegaD", ("meanN", "log10g2", "log10g3")),
    "fig7R": ("delta", "omegaD", ("meanN", "log10g2", "log10g3")),
    "fig8L": ("delta", "J", ("meanN", "log10g2", "log10g3")),
    "fig8R": ("delta", "J", ("meanN", "log10g2", "log10g3")),
}
_DRESSED_FIGS = ("fig9", "fig10")

FIGURE_IDS = tuple(_LINE_FIGS) + tuple(_HEAT_FIGS) + _DRESSED_FIGS

#: panels each figure id is expected to contain
PANEL_COUNTS = {
    "fig3a": 2, "fig3b": 2, "fig5": 2,
    "fig4": 3, "fig6": 3, "fig7L": 3, "fig7R": 3, "fig8L": 3, "fig8R": 3,
    "fig9": 4, "fig10": 2,
}


@dataclass(frozen=True)
class FigureJob:
    """One rendering task: a CSV, the figure id, and the output base path."""

    csv_path: str | Path
    figure_id: str
    out_base: str | Path

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(
                f"unknown figure id {self.figure_id!r}; known: {FIGURE_IDS}"
            )


@dataclass(frozen=True)
class RenderResult:
    panel_count: int
    png_path: Path
    svg_path: Path
    peak_coordinates: tuple[float, ...] = ()


def local_maxima(x: np.ndarray, y: np.ndarray) -> list[float]:
    """Coordinates of interior 3-point local maxima of y over x."""
    order = np.argsort(x)
    xs, ys = x[order], y[order]
    out = []
    for i in range(1, len(ys) - 1):
        if np.isfinite(ys[i]) and ys[i] > ys[i - 1] and ys[i] > ys[i + 1]:
            out.append(float(xs[i]))
    return out


def render(job: FigureJob) -> RenderResult:
    """Render one figure; writes PNG and SVG next to ``out_base``."""
    cols = read_columns(job.csv_path)
    if job.figure_id in _LINE_FIGS:
        fig, peaks = _render_lines(job.figure_id, cols, job.csv_path)
    elif job.figure_id in _HEAT_FIGS:
        fig, peaks = _render_heatmaps(job.figure_id, cols, job.csv_path)
    else:
        fig, peaks = _render_dressed(job.figure_id, cols, job.csv_path)
    base = Path(job.out_base)
    base.parent.mkdir(parents=True, exist_ok=True)
    png = base.with_suffix(".png")
    svg = base.with_suffix(".svg")
    fig.savefig(png)
    fig.savefig(svg, metadata={"Date": None})
    n_panels = len(fig.axes) - sum(
        1 for ax in fig.axes if getattr(ax, "_figplots_colorbar", False)
    )
    plt.close(fig)
    return RenderResult(
        panel_count=n_panels,
        png_path=png,
        svg_path=svg,
        peak_coordinates=tuple(peaks),
    )


def _render_lines(fig_id, cols, path):
    family = _LINE_FIGS[fig_id]
    needed = ("delta", "meanN", "log10g2") + (
        ("log10g3",) if fig_id == "fig5" else ()
    )
    require_columns(cols, needed + ((family,) if family else ()), path)
    fig, (ax_n, ax_g) = plt.subplots(2, 1, figsize=(6.0, 6.4), sharex=True)
    peaks: list[float] = []
    if family:
        for value in np.unique(cols[family]):
            sel = cols[family] == value
            order = np.argsort(cols["delta"][sel])
            x = cols["delta"][sel][order]
            ax_n.plot(x, cols["meanN"][sel][order], label=f"{family}={value:g}")
            ax_g.plot(x, cols["log10g2"][sel][order])
        ax_n.legend(fontsize=8)
    else:
        order = np.argsort(cols["delta"])
        x = cols["delta"][order]
        mean_n = cols["meanN"][order]
        ax_n.plot(x, mean_n, color="tab:blue")
        peaks = local_maxima(x, mean_n)
        for p in peaks:
            ax_n.axvline(p, color="tab:red", lw=0.8, ls="--")
        ax_g.plot(x, cols["log10g2"][order], label="log10 g2")
        ax_g.plot(x, cols["log10g3"][order], label="log10 g3")
        ax_g.axhline(0.0, color="k", lw=0.8)
        ax_g.legend(fontsize=8)
    ax_n.set_ylabel("mean photon number")
    ax_g.set_ylabel("log10 g2" + (" / g3" if not family else ""))
    ax_g.set_xlabel("detuning (units of kappa)")
    fig.tight_layout()
    return fig, peaks


def _grid(cols, x_name, y_name, z_name):
    x = np.unique(cols[x_name])
    y = np.unique(cols[y_name])
    if len(x) * len(y) != len(cols[z_name]):
        raise ValueError(
            f"rows do not form a full {x_name} x {y_name} grid"
        )
    # rows are axis1-major with axis1 = x
    z = cols[z_name].reshape(len(x), len(y))
    return x, y, z


def _render_heatmaps(fig_id, cols, path):
    x_name, y_name, metrics = _HEAT_FIGS[fig_id]
    require_columns(cols, (x_name, y_name) + metrics, path)
    fig, axes = plt.subplots(
        1, len(metrics), figsize=(4.2 * len(metrics), 3.6), sharey=True
    )
    for ax, metric in zip(np.atleast_1d(axes), metrics):
        x, y, z = _grid(cols, x_name, y_name, metric)
        masked = np.ma.masked_invalid(z.T)
        mesh = ax.pcolormesh(x, y, masked, shading="nearest")
        cbar = fig.colorbar(mesh, ax=ax)
        cbar.ax._figplots_colorbar = True
        ax.set_title(metric, fontsize=10)
        ax.set_xlabel(f"{x_name} (units of kappa)")
    np.atleast_1d(axes)[0].set_ylabel(f"{y_name} (units of kappa)")
    fig.tight_layout()
    return fig, []


def _render_dressed(fig_id, cols, path):
    require_columns(
        cols, ("omegaD", "J", "manifold", "index", "numeric"), path
    )
    axis_name = "omegaD" if fig_id == "fig9" else "J"
    panel_name = "J" if fig_id == "fig9" else "omegaD"
    panel_values = np.unique(cols[panel_name])
    manifolds = (1, 2)
    n_cols = len(panel_values)
    fig, axes = plt.subplots(
        2, n_cols, figsize=(4.4 * n_cols, 6.4), squeeze=False
    )
    for col, pv in enumerate(panel_values):
        for row, manifold in enumerate(manifolds):
            ax = axes[row][col]
            sel = (cols[panel_name] == pv) & (cols["manifold"] == manifold)
            for idx in np.unique(cols["index"][sel]):
                branch = sel & (cols["index"] == idx)
                order = np.argsort(cols[axis_name][branch])
                ax.plot(
                    cols[axis_name][branch][order],
                    cols["numeric"][branch][order],
                    lw=1.0,
                )
            ax.set_title(
                f"{manifold}-photon manifold, {panel_name}={pv:g}", fontsize=9
            )
            if row == 1:
                ax.set_xlabel(f"{axis_name} (units of kappa)")
            if col == 0:
                ax.set_ylabel("energy (units of kappa)")
    fig.tight_layout()
    return fig, []
