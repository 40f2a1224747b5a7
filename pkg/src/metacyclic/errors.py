"""Exception hierarchy shared by all modules."""


class MetacyclicError(Exception):
    """Base class for domain errors (mapped to exit status 1 by the CLI)."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ReducibleModulus(MetacyclicError):
    pass


class NotMonic(MetacyclicError):
    pass


class ZeroElement(MetacyclicError):
    pass


class NonCoprime(MetacyclicError):
    pass


class NonCoprimeR(MetacyclicError):
    pass


class BadGroupParams(MetacyclicError):
    pass


class ParamMismatch(MetacyclicError):
    pass


class TwistMismatch(MetacyclicError):
    pass


class OrbitMismatch(MetacyclicError):
    pass


class ShapeMismatch(MetacyclicError):
    pass


class ThetaNotInjective(MetacyclicError):
    pass


class NotAnIdeal(MetacyclicError):
    pass


class ZeroCode(MetacyclicError):
    pass


class EmptyCode(ZeroCode):
    pass


class BudgetExceeded(MetacyclicError):
    """Raised when an enumeration would exceed its budget.

    ``best`` carries the best upper bound found so far (or None).
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class NotAnHCode(MetacyclicError):
    pass


class NotADivisor(MetacyclicError):
    pass


class BadSubgroupPair(MetacyclicError):
    pass


class ParseError(MetacyclicError):
    pass
