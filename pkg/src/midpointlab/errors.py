"""Exception types shared across the package."""


class MidpointLabError(Exception):
    pass


class BudgetExceeded(MidpointLabError):
    """A requested computation would blow a configured resource cap.

    Raised before any partial state is built, so callers never see
    half-constructed levels or tables.
    """

    def __init__(self, message, *, predicted=None, cap=None):
        super().__init__(message)
        self.predicted = predicted
        self.cap = cap


class DecodeError(MidpointLabError, ValueError):
    """Input string is not a canonical vertex encoding."""


class DisconnectedGraphError(MidpointLabError):
    """BFS could not reach every vertex; carries one offending component."""

    def __init__(self, message, component):
        super().__init__(message)
        self.component = component


class WitnessChainError(MidpointLabError):
    """Cone-witness chain inconsistent at a path position."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class ConicalAxiomError(MidpointLabError):
    """A user-supplied midpoint operation failed the half-distance axiom."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness
