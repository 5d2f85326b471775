"""Static figure rendering for kiosksim CSV outputs."""

__version__ = "0.1.0"

from .figures import KINDS, FigureError, FigureSpec, build_figure, render

__all__ = ["__version__", "KINDS", "FigureError", "FigureSpec", "build_figure", "render"]
