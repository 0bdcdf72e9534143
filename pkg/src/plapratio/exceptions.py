"""Exception types raised across the package."""


class InvalidParameterError(ValueError):
    """A parameter (p, N, tolerance, ...) is outside its admissible range."""


class InvalidInputError(ValueError):
    """An input field or sample violates the operation's preconditions."""


class NoBoundAvailableError(ValueError):
    """No branch of the ratio bound applies to the requested (p, N)."""

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class BracketNotFoundError(RuntimeError):
    """The initial eigenvalue sweep failed to straddle the target mode."""


class ConvergenceError(RuntimeError):
    """An iterative solver stopped before meeting its tolerance.

    ``best`` carries the best iterate reached, when one exists.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class DegenerateSplitError(RuntimeError):
    """The balancing function for the split hyperplane never changes sign."""


class InternalSolverError(RuntimeError):
    """A solver produced output that violates its own postconditions."""
