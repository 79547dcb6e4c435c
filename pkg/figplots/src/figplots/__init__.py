"""Publication-style figures from blockade sweep CSVs."""

from .csvio import read_columns, require_columns
from .render import FIGURE_IDS, PANEL_COUNTS, FigureJob, RenderResult, local_maxima, render

__version__ = "0.1.0"
