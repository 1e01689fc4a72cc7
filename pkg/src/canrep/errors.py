"""Exception hierarchy shared across the package."""


class CanrepError(Exception):
    """Base class for all domain errors raised by canrep."""


class ParseError(CanrepError):
    """Malformed scalar, file, or CLI payload."""


class DimensionMismatch(CanrepError):
    """Matrix or representation shapes do not line up."""


class AlgebraError(CanrepError):
    """Invalid algebra data (weights, parameters, relations)."""


class TubeError(CanrepError):
    """Invalid tube identifier or non-regular input to tube machinery."""


class DecompositionError(CanrepError):
    """The randomized splitter stalled; retry with a larger field or new seed."""


class ApproximationError(CanrepError):
    """Approximation construction failed; carries a diagnostic payload."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic if diagnostic is not None else {}


class ChainError(CanrepError):
    """Slope-chain construction got stuck at some ratio."""

    def __init__(self, message, stuck_index=None):
        super().__init__(message)
        self.stuck_index = stuck_index
