"""Tabulated efficiency and power-ratio curves, exact EF surfaces, CSV output."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import hightemp as ht
from .engine import EngineParams, eco_exact, eco_exact_grid
from .exceptions import ParameterError
from .hightemp import FixedFrequency, GammaLimit, ObjectiveKind, ReducedParams
from .numopt import SurfaceResult, grid_axes, maximize_surface

FINITE_GAMMAS = (0.1, 10.0)
SWEEP_KINDS = ("fig2", "fig3", "fig4")
DEFAULT_RANGES = {"fig2": (0.0, 1.0), "fig3": (0.0, 0.99), "fig4": (0.0, 0.99)}
SURFACE_BOUNDS = ((0.1, 60.0), (0.1, 30.0))

_FIX = (("wh", FixedFrequency.W_H), ("wc", FixedFrequency.W_C))
_OBJ = (("eco", ObjectiveKind.ECOLOGICAL), ("pow", ObjectiveKind.POWER))
_LIMITS = (("0", GammaLimit.ZERO), ("inf", GammaLimit.INF))


@dataclass
class SweepTable:
    kind: str
    columns: tuple[str, ...]
    rows: list[tuple[float, ...]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([row[k] for row in self.rows])


def _gamma_tag(g):
    return f"g{g:g}"


def eta_grid(lo, hi, count, upper=1.0):
    if count < 2:
        raise ParameterError("count", "sweep count must be at least 2")
    if not 0.0 <= lo < hi <= upper:
        raise ParameterError(
            "sweep_range", f"eta_C range must satisfy 0 <= lo < hi <= {upper:g}, got ({lo}, {hi})")
    return np.linspace(lo, hi, count)


def fig2_table(lo=0.0, hi=1.0, count=101) -> SweepTable:
    """Efficiency at maximum EF against eta_C: limit bounds and finite-gamma samples."""
    columns = ["eta_C", "emef_wh_lo", "eta_AB", "emef_wc_hi"]
    columns += [f"emef_{tag}_{_gamma_tag(g)}" for tag, _ in _FIX for g in FINITE_GAMMAS]
    table = SweepTable("fig2", tuple(columns))
    for eta_c in eta_grid(lo, hi, count):
        if eta_c == 0.0:
            table.rows.append((0.0,) * len(columns))
            continue
        lo_wh, ab = ht._bounds(FixedFrequency.W_H, eta_c)
        hi_wc = ht._bounds(FixedFrequency.W_C, eta_c)[1]
        row = [eta_c, lo_wh, ab, hi_wc]
        row += [ht.emef_closed_form(fix, 1.0 - eta_c, g) for _, fix in _FIX for g in FINITE_GAMMAS]
        table.rows.append(tuple(row))
    return table


def fig3_table(lo=0.0, hi=0.99, count=100) -> SweepTable:
    """Fractional power loss ``1 - E/P`` at maximum EF and at maximum power."""
    cases = [(f"Rp_{o}_{f}", obj, fix) for o, obj in _OBJ for f, fix in _FIX]
    columns = ["eta_C"]
    columns += [f"{name}_{lt}" for name, _, _ in cases for lt, _ in _LIMITS]
    columns += [f"{name}_{_gamma_tag(g)}" for name, _, _ in cases for g in FINITE_GAMMAS]
    table = SweepTable("fig3", tuple(columns))
    for eta_c in eta_grid(lo, hi, count, upper=0.99):
        if eta_c == 0.0:
            # near equilibrium: E/P -> 2/3 at maximum EF and -> 0 at maximum power
            row = [0.0]
            row += [1.0 / 3.0 if obj is ObjectiveKind.ECOLOGICAL else 1.0
                    for _, obj, _ in cases for _ in _LIMITS]
            row += [1.0 / 3.0 if obj is ObjectiveKind.ECOLOGICAL else 1.0
                    for _, obj, _ in cases for _ in FINITE_GAMMAS]
            table.rows.append(tuple(row))
            continue
        tau = 1.0 - eta_c
        row = [eta_c]
        row += [ht.fractional_power_loss(obj, fix, ReducedParams(tau, lim))
                for _, obj, fix in cases for _, lim in _LIMITS]
        row += [ht.fractional_power_loss(obj, fix, ReducedParams(tau, g))
                for _, obj, fix in cases for g in FINITE_GAMMAS]
        table.rows.append(tuple(row))
    return table


def fig4_table(lo=0.0, hi=0.99, count=100) -> SweepTable:
    """Power at maximum EF relative to maximum power."""
    columns = ["eta_C"]
    columns += [f"Rbar_{f}_{lt}" for f, _ in _FIX for lt, _ in _LIMITS]
    columns += [f"Rbar_{f}_{_gamma_tag(g)}" for f, _ in _FIX for g in FINITE_GAMMAS]
    table = SweepTable("fig4", tuple(columns))
    for eta_c in eta_grid(lo, hi, count, upper=0.99):
        if eta_c == 0.0:
            table.rows.append((0.0,) + (0.75,) * (len(columns) - 1))
            continue
        tau = 1.0 - eta_c
        row = [eta_c]
        row += [ht.power_ratio_eco_vs_maxpower(fix, ReducedParams(tau, lim))
                for _, fix in _FIX for _, lim in _LIMITS]
        row += [ht.power_ratio_eco_vs_maxpower(fix, ReducedParams(tau, g))
                for _, fix in _FIX for g in FINITE_GAMMAS]
        table.rows.append(tuple(row))
    return table


_BUILDERS = {"fig2": fig2_table, "fig3": fig3_table, "fig4": fig4_table}


def sweep(kind: str, lo=None, hi=None, count=101) -> SweepTable:
    if kind not in _BUILDERS:
        raise ParameterError("kind", f"sweep kind must be one of {', '.join(SWEEP_KINDS)}, got {kind!r}")
    d_lo, d_hi = DEFAULT_RANGES[kind]
    return _BUILDERS[kind](d_lo if lo is None else lo, d_hi if hi is None else hi, count)


# -- exact ecological-function surface ----------------------------------------

@dataclass
class Surface:
    w_h: np.ndarray
    w_c: np.ndarray
    eco: np.ndarray  # eco[i, j] at (w_h[i], w_c[j])
    result: SurfaceResult


def eco_surface(p: EngineParams, bounds=SURFACE_BOUNDS, resolution=200, refine_tol=1e-8) -> Surface:
    """Exact EF on a grid over ``(w_h, w_c)`` and its located maximum.

    The frequencies stored in ``p`` are ignored.
    """
    wh, wc = grid_axes(bounds, max(resolution, 2))
    grid = eco_exact_grid(p, wh[:, None], wc[None, :])

    def f(w_h, w_c):
        return eco_exact(EngineParams(p.gamma_h, p.gamma_c, p.lam, p.t_h, p.t_c, w_h, w_c))

    result = maximize_surface(f, bounds, resolution, refine_tol, values=grid)
    return Surface(wh, wc, grid, result)


# -- output -------------------------------------------------------------------

def format_value(v: float, precision: int) -> str:
    return f"{v:.{precision}g}"


def check_precision(precision: int) -> int:
    if not 6 <= precision <= 17:
        raise ParameterError("precision", f"precision must lie in [6, 17], got {precision}")
    return precision


def write_csv(path, columns, rows, precision=12):
    check_precision(precision)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v, precision) for v in row])


def write_table(table: SweepTable, path, precision=12):
    write_csv(path, table.columns, table.rows, precision)


def surface_rows(surface: Surface):
    for i, x in enumerate(surface.w_h):
        for j, y in enumerate(surface.w_c):
            yield x, y, surface.eco[i, j]


def write_surface(surface: Surface, path, precision=12):
    write_csv(path, ("w_h", "w_c", "eco"), surface_rows(surface), precision)


def json_safe(obj):
    """Replace non-finite floats with None, recursively."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    if isinstance(obj, np.generic):
        return json_safe(obj.item())
    return obj


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(json_safe(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")
