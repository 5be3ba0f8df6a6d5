"""Exception types raised across the package."""


class PopucError(Exception):
    """Base class for all library errors."""


class InvalidArgument(PopucError, ValueError):
    pass


class DomainError(PopucError, ValueError):
    """A Pochhammer or hypergeometric evaluation hit a pole."""


class NotAChainSequence(PopucError, ValueError):
    """Raised when a parameter iterate leaves (0, 1).

    ``index`` is the first n at which m_n fell outside the open interval.
    """

    def __init__(self, index, value, message=None):
        self.index = index
        self.value = value
        super().__init__(message or f"not a positive chain sequence: m_{index} = {float(value)!r} not in (0, 1)")


class ConsistencyError(PopucError, ArithmeticError):
    """An identity that must hold exactly was violated numerically."""


class NotSelfInversive(ConsistencyError):
    pass


class ZeroIsolationError(PopucError, ArithmeticError):
    pass


class LemmaViolation(ConsistencyError):
    """A quantity proven positive came out nonpositive."""


class PVDivergence(PopucError, ArithmeticError):
    pass


class SingularTransform(PopucError, ArithmeticError):
    pass


class JNonexistence(PopucError, ValueError):
    """The chain sequence is SPPCS, so the integral J does not exist."""

    def __init__(self, message, verdict=None):
        self.verdict = verdict
        super().__init__(message)


class Inconclusive(PopucError, ArithmeticError):
    pass


class VerblunskyBound(InvalidArgument):
    """A Verblunsky coefficient has modulus >= 1."""
