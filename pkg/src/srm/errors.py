"""Exception types shared across the package."""


class SrmError(Exception):
    """Base class for every error raised by this package."""


class NotOddPrime(SrmError, ValueError):
    pass


class FieldMismatch(SrmError, ValueError):
    pass


class DivisionByZero(SrmError, ZeroDivisionError):
    pass


class NotSquare(SrmError, ValueError):
    pass


class Singular(SrmError, ValueError):
    pass


class DimensionMismatch(SrmError, ValueError):
    pass


class ArityMismatch(SrmError, ValueError):
    pass


class NotStrictlyIncreasing(SrmError, ValueError):
    pass


class OutOfRange(SrmError, ValueError):
    pass


class ParamDomain(SrmError, ValueError):
    """Parameters violate q >= r >= n(n-1)/2 or a similar domain condition."""


class BudgetExceeded(SrmError, RuntimeError):
    pass


class NotDeltaPreserving(SrmError, ValueError):
    """A linear map sends some distinct-coordinate tuple to one with a repeat."""
