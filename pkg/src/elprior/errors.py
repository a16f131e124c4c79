"""Exception types shared across the package."""


class ElpriorError(Exception):
    """Base class for all elprior errors."""


class MissingMoment(ElpriorError):
    """The oracle cannot supply a moment required by the estimating function."""


class OutOfHull(ElpriorError):
    """Zero is not strictly inside the convex hull of the G values."""


class NoConvergence(ElpriorError):
    """An iterative solver hit its iteration cap."""


class DegeneratePrior(ElpriorError):
    """sigma^2(theta) is non-positive or its denominator vanished."""


class EmptyInterval(ElpriorError):
    """The feasible theta interval is empty (degenerate sample)."""


class NotARoot(ElpriorError):
    """theta0 does not solve E{G(X, theta0)} = 0 within tolerance."""


class DegenerateDenominator(ElpriorError):
    """E{G'(X, theta0)} = 0 in a bias formula."""


class ParseError(ElpriorError):
    """A data or config file could not be parsed."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class EmptyFile(ElpriorError):
    """A data file contained no values."""
