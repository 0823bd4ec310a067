"""Exception types shared across the package."""


class ModelocError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ModelocError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidIndexError(ModelocError, ValueError):
    """A mode index combination that does not label an eigenfunction."""


class BracketError(ModelocError, RuntimeError):
    """A root bracket could not be established or refined."""


class RootScanExhaustedError(ModelocError, RuntimeError):
    """A parameter scan hit its ceiling before locating the requested root."""


class TruncationError(ModelocError, RuntimeError):
    """A truncated expansion failed its trailing-term adequacy check."""


class ConvergenceError(ModelocError, RuntimeError):
    """Iterative refinement stalled before reaching the requested tolerance."""


class UnsupportedConditionError(ModelocError, ValueError):
    """A boundary condition the domain family does not support."""
