"""Exception hierarchy shared by the numerical modules."""


class LogGPError(Exception):
    """Base class for all errors raised by :mod:`loggp`."""


class DomainError(LogGPError, ValueError):
    """An argument lies outside the domain of a function."""


class VelocityAboveThreshold(DomainError):
    """No non-constant traveling wave exists because ``c**2 >= 2*lambda``."""

    def __init__(self, c, lam):
        self.c = c
        self.lam = lam
        super().__init__(
            f"c^2 = {c * c:.17g} >= 2*lambda = {2 * lam:.17g}: "
            "only constant traveling waves exist above the velocity threshold"
        )


class NoInteriorRoot(DomainError):
    """The requested auxiliary root does not exist for these parameters."""


class WrongBranch(DomainError):
    """The routine does not cover this parameter branch (e.g. ``c == 0``)."""


class TrivialModulus(LogGPError, ArithmeticError):
    """A ratio was requested against a potential energy that vanishes."""


class GluingError(LogGPError):
    """Pieces of a periodized profile do not match at the gluing points."""


class BasisTruncationError(LogGPError):
    """The sampling window is too narrow for the requested Hermite basis."""


class EvolutionError(LogGPError, FloatingPointError):
    """A time integration produced non-finite values."""

    def __init__(self, step, message="non-finite values"):
        self.step = step
        super().__init__(f"{message} at step {step}")


class CsvFormatError(LogGPError, ValueError):
    """A CSV file could not be parsed into a grid function."""


class ConfigError(LogGPError, ValueError):
    """A run configuration is malformed or contains invalid values."""
