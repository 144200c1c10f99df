"""Exception hierarchy shared across the package."""


class LeavittError(Exception):
    """Base class for every error this package raises deliberately."""


class GraphError(LeavittError):
    """Malformed graph input, or a vertex-set precondition violation."""


class PairError(LeavittError):
    """A pair (H, S) that is not admissible for the given graph."""


class RingError(LeavittError):
    """Unsupported ring specification, or mixed-ring arithmetic."""


class EngineError(LeavittError):
    """Ill-formed algebra element, or operands from different algebras."""


class ExprError(LeavittError):
    """Syntax or identifier-resolution error in an element expression."""
