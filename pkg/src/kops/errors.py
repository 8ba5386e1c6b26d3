"""Exception hierarchy shared by every module in :mod:`kops`."""


class KOpsError(Exception):
    """Base class for all errors raised by this package."""


class NotPLocal(KOpsError, ValueError):
    """A rational value has a denominator divisible by the ambient prime."""


class ZeroDenominator(KOpsError, ZeroDivisionError):
    pass


class ContextMismatch(KOpsError, ValueError):
    """Operands live in different (p, q, basis) contexts, or the context is invalid."""


class BasisMismatch(ContextMismatch):
    pass


class NotAUnit(KOpsError, ValueError):
    pass


class InsufficientPrecision(KOpsError, ValueError):
    pass


class NotDivisible(KOpsError, ValueError):
    pass


class NotInIdeal(KOpsError, ValueError):
    pass


class NotInSpan(KOpsError, ValueError):
    pass


class SizeLimit(KOpsError, ValueError):
    pass


class PreconditionViolated(KOpsError, ValueError):
    pass


class IntegralityViolation(KOpsError, ArithmeticError):
    """A coefficient that must be p-local (or integral) turned out not to be."""
