"""midpointlab: a computational laboratory for iterated-midpoint graph
hierarchies.

Levels are built by appending formal midpoints and coning edges; the package
computes their exact hop metrics, rigorous intervals for the limiting scaled
metric, the induced dyadic geodesics, and extremal-graph certificates
(separated sets via clique search, recursive edge-count bounds).
"""

from .vertex import Vertex, leaf, midpoint, level, encode, decode
from .graphs import BuildBudget, GraphLevel, build_levels, predict_vcount, check_growth
from .errors import (
    MidpointLabError,
    BudgetExceeded,
    DecodeError,
    DisconnectedGraphError,
    WitnessChainError,
    ConicalAxiomError,
)

__version__ = "0.1.0"

__all__ = [
    "Vertex", "leaf", "midpoint", "level", "encode", "decode",
    "BuildBudget", "GraphLevel", "build_levels", "predict_vcount", "check_growth",
    "MidpointLabError", "BudgetExceeded", "DecodeError", "DisconnectedGraphError",
    "WitnessChainError", "ConicalAxiomError",
    "__version__",
]
