"""Exception hierarchy shared across the package."""


class QHError(Exception):
    """Base class for all errors raised by qheis."""


class ZeroDivisor(QHError):
    """Inversion of a zero quaternion (or of a quaternion below tolerance)."""


class DomainError(QHError):
    """Argument outside the stated domain of a bound or coordinate function."""


class NonUnit(QHError):
    """A quaternion required to be unit modulus is not."""


class NonPositive(QHError):
    """A strictly positive parameter (dilation factor, radius) is not."""


class NotSymplectic(QHError):
    """A matrix does not preserve the Hermitian form within tolerance."""


class FixesInfinity(QHError):
    """Isometric sphere requested for a matrix fixing the point at infinity."""


class OriginInput(QHError):
    """The origin was passed where a nonzero Heisenberg point is required."""


class MisalignedFan(QHError):
    """Fan direction does not match the translation it is paired with."""


class ZeroHorizontalPart(QHError):
    """The horizontal component required to be nonzero vanishes."""


class DegenerateInput(QHError):
    """Certification input violates a distinctness / nonzero precondition."""


class PreconditionFailed(QHError):
    """A verification routine was called outside its guaranteed regime."""


class BudgetExceeded(QHError):
    """Requested work exceeds the numerical error-growth budget."""


class UnknownFunction(QHError):
    """Unrecognized function identifier passed to the brute-force oracle."""
