"""Static figures for the shared-cache scheduler's CSV output."""

from .render import (FIGURE_KINDS, SIGMA_COLUMNS, SWEEP_COLUMNS, FigureSpec,
                     RenderSummary, SchemaError, render, sigma_series,
                     sweep_series)

__version__ = "0.1.0"

__all__ = [
    "FIGURE_KINDS",
    "SIGMA_COLUMNS",
    "SWEEP_COLUMNS",
    "FigureSpec",
    "RenderSummary",
    "SchemaError",
    "render",
    "sigma_series",
    "sweep_series",
]
