"""Exception hierarchy shared by every module."""


class QFermionError(Exception):
    """Base class for library errors."""


class DomainError(QFermionError, ValueError):
    """An argument lies outside the operation's domain."""


class ZeroBaseError(DomainError, ZeroDivisionError):
    """Evaluation of a negative power of q at q = 0."""


class InexactDivisionError(QFermionError, ArithmeticError):
    """A division that must be exact left a nonzero remainder.

    Raised only on internal inconsistency; valid inputs never trigger it.
    """


class ParseError(QFermionError, ValueError):
    """Malformed serialized input."""


class RegimeError(DomainError):
    """A series was asked for outside the regime where it converges."""

    def __init__(self, message, regime):
        super().__init__(message)
        self.regime = regime


class SingularSeriesError(RegimeError):
    """A series term divides by a vanishing q-factorial (q = 1)."""

    def __init__(self, message):
        super().__init__(message, "boundary")


class UnsupportedRegimeError(DomainError):
    """A numeric representation is not real in the requested regime."""
