"""Three-level laser quantum heat engine: steady state, thermodynamics and optimization."""

from .engine import (
    EngineParams,
    Observables,
    SteadyState,
    bose_occupation,
    eco_exact,
    observables,
    power_exact,
    steady_state_closed_form,
    steady_state_numeric,
)
from .exceptions import (
    NumericalError,
    ParameterError,
    TwoParameterOptimizationError,
    UndefinedRatioError,
)
from .hightemp import FixedFrequency, GammaLimit, ObjectiveKind, OptimumPoint, ReducedParams
from .numopt import SurfaceResult, maximize_scalar, maximize_surface

__all__ = [
    "EngineParams", "Observables", "SteadyState", "bose_occupation", "eco_exact",
    "observables", "power_exact", "steady_state_closed_form", "steady_state_numeric",
    "NumericalError", "ParameterError", "TwoParameterOptimizationError", "UndefinedRatioError",
    "FixedFrequency", "GammaLimit", "ObjectiveKind", "OptimumPoint", "ReducedParams",
    "SurfaceResult", "maximize_scalar", "maximize_surface",
]
