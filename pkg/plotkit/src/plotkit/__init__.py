"""Figure rendering for the confined-oscillator CSV reports."""

from .figures import BUILTIN_FIGURES, FigureSpec, RenderResult, render_figure

__version__ = "0.1.0"
