"""Publication-style figures from maqkd result tables."""

from .figures import FIGURES, FigureSpec, build_figure, render

__all__ = ["FIGURES", "FigureSpec", "build_figure", "render"]

__version__ = "0.1.0"
