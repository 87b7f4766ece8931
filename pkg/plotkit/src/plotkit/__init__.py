"""Figures from link-budget simulator CSV files."""

from .figures import STYLE, FigureSpec, build_figure, render
from .schemas import KIND_HEADERS, KINDS, SchemaError, read_table

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "KINDS",
    "KIND_HEADERS",
    "STYLE",
    "SchemaError",
    "build_figure",
    "read_table",
    "render",
]
