"""Exception types shared across the package."""


class OptigonError(Exception):
    """Base class for all package-specific errors."""


class InvalidPolygon(OptigonError, ValueError):
    """Polygon data violates a structural requirement."""


class DiameterExceeded(OptigonError, ValueError):
    """Polygon is not small: its diameter exceeds one beyond tolerance."""


class DimensionMismatch(OptigonError, ValueError):
    """A decision vector does not match the program's dimension."""


class NonConvexConstraint(OptigonError, ValueError):
    """A constraint is not a sum of squares bounded by an affine expression."""


class InfeasibleInitial(OptigonError, ValueError):
    """Supplied initial polygon is infeasible for the area program."""


class SubproblemFailure(OptigonError, RuntimeError):
    """A convex subproblem solve did not reach optimality."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
