"""Exception types raised by ssd_engine."""


class ParameterError(ValueError):
    """An input value lies outside its admissible domain.

    ``field`` names the offending parameter so that front ends can report it.
    """

    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"{field} must be positive")


class TwoParameterOptimizationError(ValueError):
    """Raised for simultaneous (w_h, w_c) optimization of the high-temperature objectives."""


class UndefinedRatioError(ArithmeticError):
    """A ratio was requested where its denominator vanishes."""


class NumericalError(RuntimeError):
    """A numerical routine met a non-finite value or a singular system."""
