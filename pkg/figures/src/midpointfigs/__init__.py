"""Figure rendering for midpointlab exports: graph drawings from DOT (with
optional exact simplex positioning), density trend plots, and separation
certificate histograms."""

from .inputs import DotGraph, InputError, read_dot, read_delta_csv, read_ratio_csv
from .render import KINDS, FigureSpec, render, simplex_corners

__version__ = "0.1.0"

__all__ = [
    "DotGraph", "InputError", "read_dot", "read_delta_csv", "read_ratio_csv",
    "KINDS", "FigureSpec", "render", "simplex_corners", "__version__",
]
