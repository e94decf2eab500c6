"""Bracketing scalar maximization, surface maximization and finite differences."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .exceptions import NumericalError, ParameterError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# grids with fewer nodes per axis are flagged as coarse
MIN_RESOLVED_GRID = 10


@dataclass(frozen=True)
class ScalarBracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 < self.lo < self.hi and math.isfinite(self.hi)):
            raise ParameterError("bracket", f"bracket needs 0 < lo < hi, got ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class SurfaceResult:
    w_h_star: float
    w_c_star: float
    value: float
    gradient_norm: float
    grid_resolution: int
    refined: bool
    on_boundary: bool = False
    coarse_grid: bool = False


def _finite(f, *x):
    v = f(*x)
    if not math.isfinite(v):
        raise NumericalError(f"objective is not finite at {x if len(x) > 1 else x[0]!r}: {v!r}")
    return v


def _slope(f, x):
    # step proportional to |x|: the objectives are homogeneous in the frequencies
    h = 1e-5 * abs(x)
    return (_finite(f, x + h) - _finite(f, x - h)) / (2.0 * h)


def maximize_scalar(f, bracket, tol: float = 1e-10) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``bracket``; returns ``(argmax, max)``.

    Golden-section search narrows the bracket while function comparisons are
    still informative.  Because ``f`` is flat near its maximum, comparisons
    stall at a relative width of about ``sqrt(eps)``; the remaining digits come
    from bisection on the sign of a central-difference slope.  On a flat
    plateau the smallest abscissa wins.
    """
    if not isinstance(bracket, ScalarBracket):
        bracket = ScalarBracket(*bracket)
    a, b = bracket.lo, bracket.hi

    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = _finite(f, x1), _finite(f, x2)
    while b - a > 1e-6 * max(abs(a), abs(b)):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = _finite(f, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = _finite(f, x2)

    for _ in range(200):
        if b - a <= tol * abs(0.5 * (a + b)):
            break
        mid = 0.5 * (a + b)
        if _slope(f, mid) > 0.0:
            a = mid
        else:
            b = mid

    x = 0.5 * (a + b)
    # a monotone objective drives the search into an end of the bracket
    candidates = [(x, _finite(f, x)), (bracket.lo, _finite(f, bracket.lo)),
                  (bracket.hi, _finite(f, bracket.hi))]
    best = max(candidates, key=lambda c: (c[1], -c[0]))
    return best


def finite_diff_gradient(f, point, step=None) -> np.ndarray:
    """Central-difference gradient of ``f(*point)``.

    The default step for coordinate ``x`` is ``1e-5 * max(|x|, 1)``.
    """
    x = np.asarray(point, dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        h = step if step is not None else 1e-5 * max(abs(x[i]), 1.0)
        if not h > 0:
            raise ParameterError("step")
        up, down = x.copy(), x.copy()
        up[i] += h
        down[i] -= h
        grad[i] = (_finite(f, *up) - _finite(f, *down)) / (2.0 * h)
    return grad


def finite_diff_hessian(f, point, step=None) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    n = x.size
    h = np.array([step if step is not None else 1e-4 * max(abs(v), 1.0) for v in x])
    hess = np.empty((n, n))
    f0 = _finite(f, *x)
    for i in range(n):
        for j in range(i, n):
            if i == j:
                up, down = x.copy(), x.copy()
                up[i] += h[i]
                down[i] -= h[i]
                hess[i, i] = (_finite(f, *up) - 2.0 * f0 + _finite(f, *down)) / h[i] ** 2
            else:
                total = 0.0
                for si, sj in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
                    y = x.copy()
                    y[i] += si * h[i]
                    y[j] += sj * h[j]
                    total += si * sj * _finite(f, *y)
                hess[i, j] = hess[j, i] = total / (4.0 * h[i] * h[j])
    return hess


def _check_bounds(bounds):
    (a0, a1), (b0, b1) = bounds
    for name, lo, hi in (("w_h bounds", a0, a1), ("w_c bounds", b0, b1)):
        if not 0.0 < lo < hi:
            raise ParameterError(name, f"{name} need 0 < lo < hi, got ({lo}, {hi})")
    return (float(a0), float(a1)), (float(b0), float(b1))


def _inside(x, bounds):
    return all(lo <= v <= hi for v, (lo, hi) in zip(x, bounds))


def _polish(f, x, bounds, max_iter=30):
    # Newton steps on finite-difference derivatives, accepted while they
    # reduce the gradient norm without leaving the box.
    g = finite_diff_gradient(f, x)
    for _ in range(max_iter):
        hess = finite_diff_hessian(f, x)
        if np.any(np.linalg.eigvalsh(hess) >= 0.0):
            break
        trial = x - np.linalg.solve(hess, g)
        if not _inside(trial, bounds):
            break
        g_trial = finite_diff_gradient(f, trial)
        if np.linalg.norm(g_trial) >= np.linalg.norm(g):
            break
        x, g = trial, g_trial
    return x, g


def grid_axes(bounds, coarse_n):
    (a0, a1), (b0, b1) = _check_bounds(bounds)
    return np.linspace(a0, a1, coarse_n), np.linspace(b0, b1, coarse_n)


def maximize_surface(f, bounds, coarse_n: int = 200, refine_tol: float = 1e-8,
                     values=None) -> SurfaceResult:
    """Global maximum of ``f(w_h, w_c)`` over a rectangle.

    A ``coarse_n`` x ``coarse_n`` grid (endpoints included) is scanned; ties go
    to the lexicographically smallest ``(w_h, w_c)``.  An interior grid maximum
    is refined by a Nelder-Mead simplex followed by Newton polishing until
    the central-difference gradient norm drops below ``refine_tol``.  A grid
    maximum on the edge of the box is returned unrefined with
    ``on_boundary=True``.

    ``values`` may carry precomputed grid values (shape ``(coarse_n,
    coarse_n)``, ``w_h`` along the first axis).
    """
    if coarse_n < 2:
        raise ParameterError("coarse_n", "grid resolution must be at least 2")
    bounds = _check_bounds(bounds)
    wh, wc = grid_axes(bounds, coarse_n)
    if values is None:
        values = np.array([[f(x, y) for y in wc] for x in wh])
    values = np.asarray(values, dtype=float)
    if values.shape != (coarse_n, coarse_n):
        raise ValueError(f"grid values have shape {values.shape}, expected {(coarse_n, coarse_n)}")
    if not np.all(np.isfinite(values)):
        i, j = np.argwhere(~np.isfinite(values))[0]
        raise NumericalError(f"objective is not finite at ({wh[i]!r}, {wc[j]!r})")

    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    coarse = coarse_n < MIN_RESOLVED_GRID
    x0 = np.array([wh[i], wc[j]])
    if i in (0, coarse_n - 1) or j in (0, coarse_n - 1):
        try:
            g = finite_diff_gradient(f, x0)
        except (NumericalError, ParameterError, ValueError):
            g = np.array([np.nan, np.nan])
        return SurfaceResult(x0[0], x0[1], float(values[i, j]), float(np.linalg.norm(g)),
                             coarse_n, refined=False, on_boundary=True, coarse_grid=coarse)

    spacing = np.array([wh[1] - wh[0], wc[1] - wc[0]])
    simplex = np.array([x0, x0 + [spacing[0], 0.0], x0 + [0.0, spacing[1]]])
    res = minimize(lambda v: -_finite(f, *v) if _inside(v, bounds) else np.inf, x0,
                   method="Nelder-Mead",
                   options={"initial_simplex": simplex, "xatol": 1e-12, "fatol": 0.0,
                            "maxiter": 4000, "maxfev": 8000})
    x = res.x if -res.fun >= values[i, j] else x0
    x, g = _polish(f, x, bounds)
    gnorm = float(np.linalg.norm(g))
    edge = not _fd_fits(x, bounds)
    return SurfaceResult(float(x[0]), float(x[1]), float(_finite(f, *x)), gnorm, coarse_n,
                         refined=gnorm < refine_tol and not edge, on_boundary=edge,
                         coarse_grid=coarse)


def _fd_fits(x, bounds):
    # room for a central-difference stencil inside the box
    return all(lo <= v - 1e-5 * max(abs(v), 1.0) and v + 1e-5 * max(abs(v), 1.0) <= hi
               for v, (lo, hi) in zip(x, bounds))
