"""Exception hierarchy shared by every orbitkit module."""


class OrbitkitError(Exception):
    """Base class for all library errors."""


class NonFiniteError(OrbitkitError, ArithmeticError):
    """A NaN or infinity reached a module boundary."""


class DomainError(OrbitkitError, ValueError):
    """An argument (or an iterate) fell outside a function's domain.

    ``index`` is set when the failure happened at a particular orbit step.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OutOfDomain(DomainError):
    pass


class RadicandNegative(DomainError):
    def __init__(self, message, theta=None):
        super().__init__(message)
        self.theta = theta


class DomainExit(DomainError):
    pass


class PoleHit(DomainError):
    pass


class PoleStart(DomainError):
    pass


class PoleAtFixedPoint(DomainError):
    pass


class RepellingStart(DomainError):
    pass


class NoFixedPoint(OrbitkitError):
    pass


class Unsupported(OrbitkitError):
    pass


class ZeroMultiplier(OrbitkitError, ValueError):
    pass


class NotConverged(OrbitkitError):
    pass


class Degenerate(OrbitkitError):
    """The candidate sequence is identically zero (start at the fixed point)."""


class HypothesisViolated(OrbitkitError):
    pass


class DegenerateEigen(OrbitkitError):
    pass


class WrongOrder(OrbitkitError):
    pass


class NonIntegerGrowth(OrbitkitError):
    pass


class NoBracket(OrbitkitError):
    pass
