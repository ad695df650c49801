"""Exception hierarchy for vergen.

Every failure raised by the library derives from VergenError so callers
(the CLI in particular) can separate library errors from programming errors.
"""


class VergenError(Exception):
    """Base class for all vergen errors."""


class DimensionMismatchError(VergenError, ValueError):
    """Raised when objects of different ambient dimension are combined."""


class EmptyInputError(VergenError, ValueError):
    """Raised when an operation needs at least one point and got none."""


class ParameterRangeError(VergenError, ValueError):
    """Raised when a numeric parameter (λ, k, μ, tol, ...) is out of range."""


class UnboundedError(VergenError):
    """Raised when a halfspace system describes an unbounded set."""


class PreconditionError(VergenError):
    """Raised when a check is called on inputs violating its hypotheses."""


class NotAFaceError(PreconditionError):
    """Raised when a vertex set is not a face of the given polytope."""


class SingularMapError(VergenError, ValueError):
    """Raised when a linear map that must be invertible is singular."""


class FiniteOrderError(PreconditionError):
    """Raised when A^k = Id fails for every k up to the configured bound."""


class BudgetExceededError(VergenError):
    """Raised when a cell, point or retry budget is exhausted."""

    def __init__(self, budget_name: str, limit: int, detail: str = "", candidate: object = None) -> None:
        """Record which budget was exceeded.

        Args:
            budget_name: Name of the budget (cell, point, retry)
            limit: The configured limit
            detail: Optional extra context
            candidate: Best partial result, when the caller has one
        """
        self.budget_name = budget_name
        self.limit = limit
        self.candidate = candidate
        message = f"{budget_name} budget of {limit} exceeded"
        super().__init__(f"{message}: {detail}" if detail else message)


class VerificationError(VergenError):
    """Raised when a construction fails its own post-verification."""
