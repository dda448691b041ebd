"""Exception types shared across the package."""


class MobalError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionMismatchError(MobalError, ValueError):
    """Objective vectors of different lengths were combined."""


class PreconditionError(MobalError, ValueError):
    """An operation was called on inputs violating its stated preconditions."""


class BudgetExceededError(MobalError, RuntimeError):
    """An enumeration would exceed the configured operation budget or size cap."""


class SearchInvariantError(MobalError, RuntimeError):
    """An exhaustive search came up empty although success is guaranteed.

    Raised only on defects: the balancing statements promise a satisfying
    interval family for every input that meets the preconditions.
    """


class InstanceFormatError(MobalError, ValueError):
    """Malformed instance text; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
