"""High-temperature, strong-field closed forms.

In the regime ``lam >> Gamma`` with thermal occupations ``n ~ T/w`` the power
and ecological function depend on the bath parameters only through the
temperature ratio ``tau = T_c/T_h`` and the dissipation asymmetry
``gamma = Gamma_h/Gamma_c``.  One frequency is held fixed and the objective is
maximized over the other.

Extreme dissipation asymmetry is expressed with :class:`GammaLimit` instead of
feeding 0 or a huge number through the finite-gamma formulas.  In the
``gamma -> 0`` limit ``Gamma_h`` stays finite and is the rate prefactor; in
the ``gamma -> inf`` limit ``Gamma_h`` diverges and the prefactor is
``Gamma_c``.  Efficiencies and all ratios are independent of the prefactor.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from .exceptions import ParameterError, TwoParameterOptimizationError, UndefinedRatioError


class GammaLimit(enum.Enum):
    ZERO = "zero"
    INF = "inf"


class ObjectiveKind(enum.Enum):
    ECOLOGICAL = "ef"
    POWER = "power"


class FixedFrequency(enum.Enum):
    W_H = "wh"
    W_C = "wc"


Gamma = Union[float, GammaLimit]


@dataclass(frozen=True)
class ReducedParams:
    """Temperature ratio and dissipation asymmetry (or one of its limits)."""

    tau: float
    gamma: Gamma

    def __post_init__(self):
        tau = float(self.tau)
        if not 0.0 < tau < 1.0:
            raise ParameterError("tau", f"tau must lie in (0, 1), got {self.tau!r}")
        object.__setattr__(self, "tau", tau)
        if not isinstance(self.gamma, GammaLimit):
            g = float(self.gamma)
            if not (g > 0.0 and math.isfinite(g)):
                raise ParameterError(
                    "gamma", f"gamma must be positive and finite, got {self.gamma!r}; "
                    "use GammaLimit for the extreme cases")
            object.__setattr__(self, "gamma", g)

    @property
    def eta_carnot(self) -> float:
        return 1.0 - self.tau

    @property
    def is_limit(self) -> bool:
        return isinstance(self.gamma, GammaLimit)


@dataclass(frozen=True)
class OptimumPoint:
    free_frequency: float
    objective_value: float
    efficiency: float
    companion_power: float
    companion_eco: float


@dataclass(frozen=True)
class EfficiencyBounds:
    lower: float
    upper: float


# -- reduced objectives -------------------------------------------------------

def _denominator(w_h, w_c, r: ReducedParams):
    if r.gamma is GammaLimit.ZERO:
        return r.tau * w_h
    if r.gamma is GammaLimit.INF:
        return w_c
    return w_c * r.gamma + r.tau * w_h


def reduced_power(w_h, w_c, r: ReducedParams, rate=1.0):
    """High-temperature power ``2 rate (w_h - w_c)(w_c - tau w_h) / 3(gamma w_c + tau w_h)``."""
    return 2.0 * rate * (w_h - w_c) * (w_c - r.tau * w_h) / (3.0 * _denominator(w_h, w_c, r))


def reduced_heat(w_h, w_c, r: ReducedParams, rate=1.0):
    """High-temperature heat current drawn from the hot bath."""
    return 2.0 * rate * w_h * (w_c - r.tau * w_h) / (3.0 * _denominator(w_h, w_c, r))


def reduced_eco(w_h, w_c, r: ReducedParams, rate=1.0):
    """High-temperature ecological function; equals ``2P - (1 - tau) Q_h``."""
    bracket = 2.0 * (w_h - w_c) - (1.0 - r.tau) * w_h
    return 2.0 * rate * (w_c - r.tau * w_h) * bracket / (3.0 * _denominator(w_h, w_c, r))


def objective(kind: ObjectiveKind):
    return reduced_eco if kind is ObjectiveKind.ECOLOGICAL else reduced_power


# -- optimal frequencies ------------------------------------------------------

def _ratio_eco_fix_wh(tau, g):
    # w_c*/w_h; the root is rationalized so that small gamma does not cancel
    if g is GammaLimit.ZERO:
        return (1.0 + 3.0 * tau) / 4.0
    if g is GammaLimit.INF:
        return math.sqrt(tau * (1.0 + tau) / 2.0)
    s = math.sqrt(2.0 * tau * (1.0 + g) * (g + (2.0 + g) * tau))
    return tau * (1.0 + 3.0 * tau + g * (1.0 + tau)) / (s + 2.0 * tau)


def _ratio_eco_fix_wc(tau, g):
    # w_h*/w_c
    if g is GammaLimit.ZERO:
        return math.sqrt(2.0 / (tau * (1.0 + tau)))
    if g is GammaLimit.INF:
        return (1.0 + 3.0 * tau) / (2.0 * tau * (1.0 + tau))
    root = math.sqrt((1.0 + g) * (1.0 + tau) * (g + (2.0 + g) * tau))
    return (g * (1.0 + 3.0 * tau) + 2.0 * tau) / (tau * (root + g * (1.0 + tau)))


def _ratio_power_fix_wh(tau, g):
    # w_c^P/w_h
    if g is GammaLimit.ZERO:
        return (1.0 + tau) / 2.0
    if g is GammaLimit.INF:
        return math.sqrt(tau)
    c = math.sqrt(tau * (1.0 + g) * (tau + g))
    return tau * (1.0 + tau + g) / (c + tau)


def _ratio_power_fix_wc(tau, g):
    # w_h^P/w_c
    if g is GammaLimit.ZERO:
        return 1.0 / math.sqrt(tau)
    if g is GammaLimit.INF:
        return (1.0 + tau) / (2.0 * tau)
    q = math.sqrt((1.0 + g) * (g + tau))
    return (g + tau + g * tau) / (tau * (q + g))


_RATIOS = {
    (ObjectiveKind.ECOLOGICAL, FixedFrequency.W_H): _ratio_eco_fix_wh,
    (ObjectiveKind.ECOLOGICAL, FixedFrequency.W_C): _ratio_eco_fix_wc,
    (ObjectiveKind.POWER, FixedFrequency.W_H): _ratio_power_fix_wh,
    (ObjectiveKind.POWER, FixedFrequency.W_C): _ratio_power_fix_wc,
}


def optimal_frequency(obj: ObjectiveKind, fix: FixedFrequency, fixed_value, r: ReducedParams):
    """Maximizer of the reduced objective over the free frequency.

    With ``w_h`` fixed the result is ``w_c*``, with ``w_c`` fixed it is ``w_h*``.
    """
    if not fixed_value > 0:
        raise ParameterError("fixed_value")
    return fixed_value * _RATIOS[obj, fix](r.tau, r.gamma)


def operating_point(obj: ObjectiveKind, fix: FixedFrequency, fixed_value, r: ReducedParams):
    """``(w_h, w_c)`` at the optimum of ``obj``."""
    free = optimal_frequency(obj, fix, fixed_value, r)
    return (fixed_value, free) if fix is FixedFrequency.W_H else (free, fixed_value)


def maximize_two_parameter(obj: ObjectiveKind, r: ReducedParams):
    """Always raises: the reduced objectives have no interior joint maximum."""
    raise TwoParameterOptimizationError(
        "simultaneous optimization over w_h and w_c of the high-temperature "
        f"{obj.value} objective only yields the trivial solution w_c = w_h = 0 "
        "(the objective is homogeneous of degree one in the frequencies); fix one "
        "frequency, or use numopt.maximize_surface on the exact ecological function")


# -- efficiencies -------------------------------------------------------------

def eta_ab(eta_c):
    """``1 - sqrt((1 - eta_C)(2 - eta_C)/2)``, defined on ``[0, 1]``."""
    if not 0.0 <= eta_c <= 1.0:
        raise ParameterError("eta_c", f"eta_c must lie in [0, 1], got {eta_c!r}")
    return 1.0 - math.sqrt((1.0 - eta_c) * (2.0 - eta_c) / 2.0)


def _bounds(fix: FixedFrequency, eta_c):
    ab = eta_ab(eta_c)
    if fix is FixedFrequency.W_H:
        return 0.75 * eta_c, ab
    return ab, (3.0 - 2.0 * eta_c) * eta_c / (4.0 - 3.0 * eta_c)


def emef_bounds(fix: FixedFrequency, eta_c) -> EfficiencyBounds:
    """Efficiency at maximum ecological function in the gamma -> 0 / inf limits."""
    if not 0.0 < eta_c < 1.0:
        raise ParameterError("eta_c", f"eta_c must lie in (0, 1), got {eta_c!r}")
    lower, upper = _bounds(fix, eta_c)
    return EfficiencyBounds(lower, upper)


def emef_closed_form(fix: FixedFrequency, tau, gamma):
    """Finite-gamma closed forms; also valid at the endpoints tau = 0 and tau = 1."""
    g = gamma
    if fix is FixedFrequency.W_H:
        root = math.sqrt((1.0 + g) * tau * (g + (2.0 + g) * tau))
        return 1.0 + tau / g - root / (math.sqrt(2.0) * g)
    root = math.sqrt((1.0 + g) * tau**2 * (1.0 + tau) * (g + (2.0 + g) * tau))
    return (g * (1.0 - tau**2) + 2.0 * (1.0 + g) * tau - root) / (g + 2.0 * tau + 3.0 * g * tau)


def emef(fix: FixedFrequency, r: ReducedParams):
    """Efficiency at maximum ecological function; nondecreasing in gamma."""
    if r.gamma is GammaLimit.ZERO:
        return _bounds(fix, r.eta_carnot)[0]
    if r.gamma is GammaLimit.INF:
        return _bounds(fix, r.eta_carnot)[1]
    return emef_closed_form(fix, r.tau, r.gamma)


def efficiency_at(obj: ObjectiveKind, fix: FixedFrequency, r: ReducedParams):
    """``1 - w_c/w_h`` at the optimum of ``obj``, via the optimal frequency."""
    ratio = _RATIOS[obj, fix](r.tau, r.gamma)
    return 1.0 - ratio if fix is FixedFrequency.W_H else 1.0 - 1.0 / ratio


def efficiency_at_max_power(fix: FixedFrequency, r: ReducedParams):
    return efficiency_at(ObjectiveKind.POWER, fix, r)


# -- values at the optimum ----------------------------------------------------

def optimum_values(obj: ObjectiveKind, fix: FixedFrequency, r: ReducedParams,
                   fixed_value=1.0, rate=1.0):
    """``(E, P)`` at the optimum of ``obj``, by substituting the optimal frequency."""
    w_h, w_c = operating_point(obj, fix, fixed_value, r)
    return reduced_eco(w_h, w_c, r, rate), reduced_power(w_h, w_c, r, rate)


def optimum(obj: ObjectiveKind, fix: FixedFrequency, r: ReducedParams,
            fixed_value=1.0, rate=1.0) -> OptimumPoint:
    w_h, w_c = operating_point(obj, fix, fixed_value, r)
    e = reduced_eco(w_h, w_c, r, rate)
    p = reduced_power(w_h, w_c, r, rate)
    return OptimumPoint(
        free_frequency=w_c if fix is FixedFrequency.W_H else w_h,
        objective_value=e if obj is ObjectiveKind.ECOLOGICAL else p,
        efficiency=1.0 - w_c / w_h,
        companion_power=p,
        companion_eco=e,
    )


# -- ratios -------------------------------------------------------------------

def _engine_regime(r: ReducedParams):
    # ReducedParams already enforces 0 < tau < 1; kept for explicit call sites
    if not 0.0 < r.tau < 1.0:
        raise ParameterError("tau", "ratios are defined only for 0 < tau < 1")


def _eco_ratio_limit(fix, tau, limit):
    s, a = math.sqrt(tau), math.sqrt(2.0 * (1.0 + tau))
    if (fix, limit) == (FixedFrequency.W_H, GammaLimit.ZERO):
        return 2.0 / 3.0
    if (fix, limit) == (FixedFrequency.W_C, GammaLimit.INF):
        return (1.0 + tau) / (1.0 + 2.0 * tau)
    return a / (s + a)


def _power_ratio_limit(fix, tau, limit):
    if (fix, limit) == (FixedFrequency.W_H, GammaLimit.ZERO):
        return 0.0
    if (fix, limit) == (FixedFrequency.W_C, GammaLimit.INF):
        return 1.0 - tau
    return 1.0 - math.sqrt(tau)


def ratio_eco_over_power(obj: ObjectiveKind, fix: FixedFrequency, r: ReducedParams):
    """``E/P`` at the optimum of ``obj``; independent of the fixed frequency and rate."""
    _engine_regime(r)
    if r.is_limit:
        limit_form = _eco_ratio_limit if obj is ObjectiveKind.ECOLOGICAL else _power_ratio_limit
        return limit_form(fix, r.tau, r.gamma)
    e, p = optimum_values(obj, fix, r)
    if p == 0.0:
        raise UndefinedRatioError("power at the optimum vanishes")
    return e / p


def fractional_power_loss(obj: ObjectiveKind, fix: FixedFrequency, r: ReducedParams):
    """Share of the power lost to entropy production, ``1 - E/P``."""
    return 1.0 - ratio_eco_over_power(obj, fix, r)


def _power_ratio_limit_curve(fix, tau, limit):
    if (fix, limit) == (FixedFrequency.W_H, GammaLimit.ZERO):
        return 0.75
    if (fix, limit) == (FixedFrequency.W_C, GammaLimit.INF):
        return (1.0 + 2.0 * tau) / (1.0 + tau) ** 2
    # rationalized: numerator and (1 - sqrt(tau))^2 both vanish as tau -> 1
    s, a = math.sqrt(tau), math.sqrt(2.0 * (1.0 + tau))
    return (1.0 + s) ** 2 * (2.0 + tau) / (a * (a * (1.0 + tau) + s * (3.0 + tau)))


def power_ratio_eco_vs_maxpower(fix: FixedFrequency, r: ReducedParams):
    """Power at maximum ecological function divided by the maximum power."""
    _engine_regime(r)
    if r.is_limit:
        return _power_ratio_limit_curve(fix, r.tau, r.gamma)
    w_h, w_c = operating_point(ObjectiveKind.ECOLOGICAL, fix, 1.0, r)
    p_eco = reduced_power(w_h, w_c, r)
    w_h, w_c = operating_point(ObjectiveKind.POWER, fix, 1.0, r)
    return p_eco / reduced_power(w_h, w_c, r)
