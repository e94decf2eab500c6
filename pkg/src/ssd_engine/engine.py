"""Steady state and thermodynamics of the three-level laser heat engine.

Natural units are used throughout (hbar = k_B = 1).  Levels are ordered
``(g, 0, 1)``: the hot bath drives g <-> 1 at frequency ``w_h``, the cold bath
drives g <-> 0 at ``w_c`` and a resonant classical field of strength ``lam``
couples 0 <-> 1.  Everything is evaluated in the rotating frame where the
steady state is time independent.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .exceptions import ParameterError
from .linalg import solve_dense

# basis indices
G, ZERO, ONE = 0, 1, 2


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise ParameterError(name)
    return value


@dataclass(frozen=True)
class EngineParams:
    """Physical parameters: bath couplings, field strength, temperatures and frequencies."""

    gamma_h: float
    gamma_c: float
    lam: float
    t_h: float
    t_c: float
    w_h: float
    w_c: float

    def __post_init__(self):
        for name, value in asdict(self).items():
            object.__setattr__(self, name, _check_positive(name, value))

    @property
    def tau(self) -> float:
        return self.t_c / self.t_h

    @property
    def gamma(self) -> float:
        return self.gamma_h / self.gamma_c

    @property
    def eta_carnot(self) -> float:
        return 1.0 - self.tau

    def occupations(self) -> OccupationPair:
        return OccupationPair(bose_occupation(self.w_h, self.t_h),
                              bose_occupation(self.w_c, self.t_c))


@dataclass(frozen=True)
class OccupationPair:
    n_h: float
    n_c: float


@dataclass(frozen=True)
class SteadyState:
    """Independent real entries of the rotating-frame steady state."""

    rho_11: float
    rho_00: float
    rho_gg: float
    rho_10_re: float
    rho_10_im: float

    @property
    def rho_10(self) -> complex:
        return complex(self.rho_10_re, self.rho_10_im)

    @property
    def trace(self) -> float:
        return self.rho_11 + self.rho_00 + self.rho_gg

    def matrix(self) -> np.ndarray:
        """3x3 density matrix in the (g, 0, 1) basis; g-coherences vanish."""
        rho = np.zeros((3, 3), dtype=complex)
        rho[G, G] = self.rho_gg
        rho[ZERO, ZERO] = self.rho_00
        rho[ONE, ONE] = self.rho_11
        rho[ONE, ZERO] = self.rho_10
        rho[ZERO, ONE] = self.rho_10.conjugate()
        return rho


@dataclass(frozen=True)
class Observables:
    power: float
    qdot_h: float
    qdot_c: float
    efficiency: float
    entropy_rate: float
    eco: float


def bose_occupation(w, t):
    """Mean photon number ``1/(exp(w/t) - 1)``.

    Written as ``exp(-x)/(1 - exp(-x))`` so that large ``w/t`` underflows to
    zero instead of overflowing.
    """
    w = _check_positive("w", w)
    t = _check_positive("t", t)
    x = w / t
    return math.exp(-x) / -math.expm1(-x)


# -- Lindblad generator -------------------------------------------------------

def _ket_bra(i, j, dtype=complex):
    op = np.zeros((3, 3), dtype=dtype)
    op[...] = 0
    op[i, j] = 1
    return op


def dissipator(jump: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """``L rho L^+ - {L^+ L, rho}/2`` for a single jump operator.

    Works for complex arrays and for object arrays of exact rationals.
    """
    ld = jump.conj().T
    ldl = ld @ jump
    return jump @ rho @ ld - (ldl @ rho + rho @ ldl) / 2


def _bath_dissipator(rate, n, lower, upper, rho):
    # emission |lower><upper| at 2*rate*(n+1), absorption |upper><lower| at 2*rate*n
    down = _ket_bra(lower, upper, rho.dtype)
    return (2 * rate * (n + 1) * dissipator(down, rho)
            + 2 * rate * n * dissipator(down.conj().T, rho))


def hot_dissipator(p: EngineParams, rho: np.ndarray) -> np.ndarray:
    n = bose_occupation(p.w_h, p.t_h)
    rate = p.gamma_h
    if rho.dtype == object:
        n, rate = Fraction(n), Fraction(rate)
    return _bath_dissipator(rate, n, G, ONE, rho)


def cold_dissipator(p: EngineParams, rho: np.ndarray) -> np.ndarray:
    n = bose_occupation(p.w_c, p.t_c)
    rate = p.gamma_c
    if rho.dtype == object:
        n, rate = Fraction(n), Fraction(rate)
    return _bath_dissipator(rate, n, G, ZERO, rho)


def bare_hamiltonian(p: EngineParams, dtype=complex) -> np.ndarray:
    """``H_0`` with the ground level at zero energy."""
    h = np.zeros((3, 3), dtype=dtype)
    h[...] = 0
    if dtype == object:
        h[ZERO, ZERO], h[ONE, ONE] = Fraction(p.w_c), Fraction(p.w_h)
    else:
        h[ZERO, ZERO], h[ONE, ONE] = p.w_c, p.w_h
    return h


def rotating_hamiltonian(p: EngineParams) -> np.ndarray:
    """``H_0 - H_bar + V_R`` for a field resonant with the 0 <-> 1 transition."""
    mid = 0.5 * (p.w_h + p.w_c)
    h = np.diag([0.0, mid, mid]).astype(complex)
    h[ONE, ZERO] = h[ZERO, ONE] = p.lam
    return h


def lindblad_rhs(p: EngineParams, rho: np.ndarray) -> np.ndarray:
    """Full rotating-frame generator applied to a 3x3 density matrix."""
    h = rotating_hamiltonian(p)
    return (-1j * (h @ rho - rho @ h)
            + hot_dissipator(p, rho) + cold_dissipator(p, rho))


# -- steady state -------------------------------------------------------------

def _steady_state_system(p: EngineParams, exact: bool = False):
    # Unknowns ordered (rho_gg, rho_11, rho_00, Re rho_10, Im rho_10).  With
    # rho_gg first the trace row eliminates it, which keeps the exponentially
    # small excited populations of the low-temperature regime free of
    # cancellation.
    occ = p.occupations()
    num = Fraction if exact else float
    nh, nc = num(occ.n_h), num(occ.n_c)
    gh, gc, lam = num(p.gamma_h), num(p.gamma_c), num(p.lam)
    zero, one = num(0), num(1)
    decay = gh * (nh + 1) + gc * (nc + 1)
    a = [
        [2 * gh * nh, -2 * gh * (nh + 1), zero, zero, -2 * lam],   # d rho_11 / dt
        [2 * gc * nc, zero, -2 * gc * (nc + 1), zero, 2 * lam],    # d rho_00 / dt
        [zero, zero, zero, -decay, zero],                          # Re d rho_10 / dt
        [zero, lam, -lam, zero, -decay],                           # Im d rho_10 / dt
        [one, one, one, zero, zero],                               # trace
    ]
    b = [zero, zero, zero, zero, one]
    return a, b


def _solve(p: EngineParams, exact: bool):
    a, b = _steady_state_system(p, exact)
    return solve_dense(a, b, exact=exact)


def steady_state_numeric(p: EngineParams, exact: bool = True) -> SteadyState:
    """Solve the stationary population/coherence equations with the trace condition.

    The occupation numbers are computed in double precision.  By default the
    system is then assembled and eliminated in exact rational arithmetic and
    each entry is rounded once; ``exact=False`` does everything in floating
    point.
    """
    gg, r11, r00, re, im = (float(v) for v in _solve(p, exact))
    return SteadyState(rho_11=r11, rho_00=r00, rho_gg=gg, rho_10_re=re, rho_10_im=im)


def steady_state_residuals(p: EngineParams, s: SteadyState) -> np.ndarray:
    """Residuals of the five stationary equations at ``s``."""
    a, b = _steady_state_system(p)
    x = np.array([s.rho_gg, s.rho_11, s.rho_00, s.rho_10_re, s.rho_10_im])
    return np.array(a) @ x - np.array(b)


def _denominator(lam, gh, gc, nh, nc):
    return (lam**2 * ((1 + 3 * nh) * gh + (1 + 3 * nc) * gc)
            + gc * gh * (1 + 2 * nh + nc * (2 + 3 * nh)) * ((1 + nc) * gc + (1 + nh) * gh))


def steady_state_closed_form(p: EngineParams) -> complex:
    """Closed-form steady-state coherence ``<1|rho|0>`` (purely imaginary)."""
    occ = p.occupations()
    d = _denominator(p.lam, p.gamma_h, p.gamma_c, occ.n_h, occ.n_c)
    return 1j * p.lam * (occ.n_h - occ.n_c) * p.gamma_c * p.gamma_h / d


# -- thermodynamics -----------------------------------------------------------

def _real_part_matrix(gg, r11, r00, re):
    rho = np.empty((3, 3), dtype=object)
    rho[...] = Fraction(0)
    rho[G, G], rho[ZERO, ZERO], rho[ONE, ONE] = gg, r00, r11
    rho[ONE, ZERO] = rho[ZERO, ONE] = re
    return rho


def observables(p: EngineParams) -> Observables:
    """Power, heat currents, efficiency, entropy production and ecological function.

    ``qdot_c`` is the heat delivered to the cold bath, ``-Tr(L_c[rho] H_0)``,
    taken from the cold dissipator rather than from energy balance.  All
    currents are formed in exact arithmetic from the exact steady state and
    rounded at the end, so nearly balanced gross flows do not cancel.
    """
    gg, r11, r00, re, im = _solve(p, exact=True)
    lam, w_h, w_c = Fraction(p.lam), Fraction(p.w_h), Fraction(p.w_c)
    # i (rho_01 - rho_10) = 2 Im rho_10
    power = lam * (w_h - w_c) * 2 * im
    qdot_h = lam * w_h * 2 * im
    # real jump operators and a real H_0: only Re(rho) contributes to the trace
    rho = _real_part_matrix(gg, r11, r00, re)
    qdot_c = -np.trace(cold_dissipator(p, rho) @ bare_hamiltonian(p, object))
    entropy_rate = qdot_c / Fraction(p.t_c) - qdot_h / Fraction(p.t_h)
    return Observables(
        power=float(power),
        qdot_h=float(qdot_h),
        qdot_c=float(qdot_c),
        efficiency=1.0 - p.w_c / p.w_h,
        entropy_rate=float(entropy_rate),
        eco=float(power - Fraction(p.t_c) * entropy_rate),
    )


def heat_in_hot(p: EngineParams) -> float:
    """``Tr(L_h[rho] H_0)`` evaluated from the hot dissipator directly."""
    gg, r11, r00, re, _ = _solve(p, exact=True)
    rho = _real_part_matrix(gg, r11, r00, re)
    return float(np.trace(hot_dissipator(p, rho) @ bare_hamiltonian(p, object)))


def _exact_flux(gamma_h, gamma_c, lam, t_h, t_c, w_h, w_c):
    # works elementwise on numpy arrays
    x_h = np.asarray(w_h, dtype=float) / t_h
    x_c = np.asarray(w_c, dtype=float) / t_c
    nh = np.exp(-x_h) / -np.expm1(-x_h)
    nc = np.exp(-x_c) / -np.expm1(-x_c)
    d = _denominator(lam, gamma_h, gamma_c, nh, nc)
    return 2.0 * lam**2 * gamma_c * gamma_h * (nh - nc) / d


def power_exact(p: EngineParams) -> float:
    """Rational closed form of the output power."""
    f = _exact_flux(p.gamma_h, p.gamma_c, p.lam, p.t_h, p.t_c, p.w_h, p.w_c)
    return float(f * (p.w_h - p.w_c))


def eco_exact(p: EngineParams) -> float:
    """Rational closed form of the ecological function."""
    f = _exact_flux(p.gamma_h, p.gamma_c, p.lam, p.t_h, p.t_c, p.w_h, p.w_c)
    return float(f * (2.0 * (p.w_h - p.w_c) - p.eta_carnot * p.w_h))


def eco_exact_grid(p: EngineParams, w_h, w_c):
    """Ecological function over arrays of frequencies; ``p.w_h``/``p.w_c`` are ignored."""
    w_h = np.asarray(w_h, dtype=float)
    w_c = np.asarray(w_c, dtype=float)
    if np.any(w_h <= 0) or np.any(w_c <= 0):
        raise ParameterError("w_h" if np.any(w_h <= 0) else "w_c")
    f = _exact_flux(p.gamma_h, p.gamma_c, p.lam, p.t_h, p.t_c, w_h, w_c)
    return f * (2.0 * (w_h - w_c) - p.eta_carnot * w_h)
