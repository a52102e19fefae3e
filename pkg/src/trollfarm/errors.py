"""Exception types raised by the equilibrium engine."""


class TrollFarmError(Exception):
    """Base class for every engine error."""


class DomainError(TrollFarmError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularityError(DomainError):
    """The operation is undefined at the requested point (e.g. type 1/2)."""


class PreconditionError(TrollFarmError):
    """A documented precondition of the operation does not hold."""


class ConvergenceError(TrollFarmError, ArithmeticError):
    """An iterative solver failed to bracket or converge."""


class BracketError(ConvergenceError):
    """A search bracket does not straddle the requested level."""

    def __init__(self, message, lo=None, hi=None, f_lo=None, f_hi=None):
        super().__init__(message)
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi


class NumericalError(TrollFarmError, ArithmeticError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConfigError(TrollFarmError, ValueError):
    """An experiment configuration is invalid; names the offending key."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message
