"""Exception hierarchy shared across the package."""


class CubicTreeError(Exception):
    """Base class for all package-specific errors."""


class NotPrime(CubicTreeError):
    pass


class NoIrreducibleFound(CubicTreeError):
    pass


class LeadingZero(CubicTreeError):
    pass


class CurveMismatch(CubicTreeError):
    pass


class PointNotOnCurve(CubicTreeError):
    pass


class ZeroDenominator(CubicTreeError):
    pass


class BudgetExceeded(CubicTreeError):
    pass


class InsufficientPrecision(CubicTreeError):
    """Raised when a decision needs Laurent coefficients beyond the known window.

    The ``required`` attribute, when set, is an absolute exponent bound that
    would have sufficed.
    """

    def __init__(self, msg="insufficient precision", required=None):
        super().__init__(msg)
        self.required = required


class NoConvergence(CubicTreeError):
    pass


class Singular(CubicTreeError):
    """A matrix is singular (or its determinant valuation is undecidable)."""


class NotInE1(CubicTreeError):
    pass


class SingularPoint(CubicTreeError):
    pass


class BoundTooSmall(CubicTreeError):
    pass


class ContainmentFailure(CubicTreeError):
    pass


class WitnessFailure(CubicTreeError):
    pass


class IdentityFailure(CubicTreeError):
    pass


class FieldTooSmall(CubicTreeError):
    pass
