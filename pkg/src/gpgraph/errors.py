"""Exception hierarchy shared by every module of the package."""


class GPGraphError(Exception):
    """Base class for all errors raised by gpgraph."""


class NotPrime(GPGraphError, ValueError):
    pass


class ReducibleModulus(GPGraphError, ValueError):
    pass


class DegreeMismatch(GPGraphError, ValueError):
    pass


class LogOfZero(GPGraphError, ValueError):
    pass


class NotADivisor(GPGraphError, ValueError):
    pass


class IncompatibleFields(GPGraphError, ValueError):
    pass


class FieldMismatch(GPGraphError, ValueError):
    pass


class PreconditionViolated(GPGraphError, ValueError):
    pass


class NonIntegralParameter(GPGraphError, ArithmeticError):
    pass


class DirectedGraph(GPGraphError, ValueError):
    pass


class DirectedSpectrum(GPGraphError, ValueError):
    pass


class DirectedInput(GPGraphError, ValueError):
    pass


class ParameterMismatch(GPGraphError, ValueError):
    pass


class ConvergenceFailure(GPGraphError, RuntimeError):
    pass


class OrderCap(GPGraphError, ValueError):
    pass


class SizeCap(GPGraphError, ValueError):
    pass


class BudgetExceeded(GPGraphError, RuntimeError):
    pass


class InternalTheoremViolation(GPGraphError, AssertionError):
    """A structural claim failed its exhaustive check.

    This always means the implementation is wrong, never the mathematics.
    ``claim`` names the failing check and ``detail`` carries a witness.
    """

    def __init__(self, claim: str, detail: str = ""):
        self.claim = claim
        self.detail = detail
        msg = claim if not detail else f"{claim}: {detail}"
        super().__init__(msg)
