"""Command-line front end: ``eval``, ``optimize``, ``sweep`` and ``surface``.

Exit status is 0 on success, 2 for invalid input and 3 for numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import hightemp as ht
from . import sweeps
from .engine import EngineParams, observables
from .exceptions import NumericalError, ParameterError, TwoParameterOptimizationError
from .hightemp import FixedFrequency, GammaLimit, ObjectiveKind, ReducedParams
from .numopt import ScalarBracket, maximize_scalar

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3

ENGINE_KEYS = ("gamma_h", "gamma_c", "lambda", "t_h", "t_c", "w_h", "w_c")


@dataclass
class RunConfig:
    params: EngineParams | None = None
    reduced: ReducedParams | None = None
    sweep_variable: str = "eta_C"
    sweep_range: tuple | None = None
    output_path: str | None = None
    precision: int = 12

    def __post_init__(self):
        sweeps.check_precision(self.precision)
        if self.sweep_range is not None and self.sweep_range[2] < 2:
            raise ParameterError("count", "sweep count must be at least 2")


# -- config handling ----------------------------------------------------------

def load_config(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParameterError("config", f"cannot read config {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParameterError("config", f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParameterError("config", "config must be a flat JSON object")
    return data


def merged_settings(args) -> dict:
    """Config-file values overridden by any flag given on the command line."""
    settings = load_config(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key in ("config", "command", "handler") or value is None:
            continue
        settings[key] = value
    return settings


def _number(settings, key, default=None):
    value = settings.get(key, default)
    if value is None:
        raise ParameterError(key, f"{key} is required")
    if isinstance(value, bool):
        raise ParameterError(key, f"{key} must be a number, got {value!r}")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParameterError(key, f"{key} must be a number, got {value!r}") from None


def _integer(settings, key, default):
    value = settings.get(key, default)
    try:
        ok = not isinstance(value, bool) and float(value).is_integer()
    except (TypeError, ValueError):
        ok = False
    if not ok:
        raise ParameterError(key, f"{key} must be an integer, got {value!r}")
    return int(value)


def engine_params(settings, need_frequencies=True) -> EngineParams:
    values = {}
    for key in ENGINE_KEYS:
        default = None if need_frequencies or key not in ("w_h", "w_c") else 1.0
        values[key] = _number(settings, key, default)
    values["lam"] = values.pop("lambda")
    return EngineParams(**values)


def parse_gamma(value):
    if isinstance(value, str):
        lowered = value.strip().lower()
        for limit in GammaLimit:
            if lowered == limit.value:
                return limit
        try:
            return float(lowered)
        except ValueError:
            raise ParameterError("gamma", f"gamma must be a positive number, 'zero' or 'inf', got {value!r}") from None
    return value


def reduced_params(settings) -> ReducedParams:
    if "gamma" not in settings:
        raise ParameterError("gamma", "gamma is required")
    return ReducedParams(_number(settings, "tau"), parse_gamma(settings["gamma"]))


def _enum(cls, settings, key):
    value = settings.get(key)
    choices = [m.value for m in cls]
    if value is None:
        raise ParameterError(key, f"{key} is required ({'|'.join(choices)})")
    try:
        return cls(value)
    except ValueError:
        raise ParameterError(key, f"{key} must be one of {'|'.join(choices)}, got {value!r}") from None


# -- output -------------------------------------------------------------------

def _emit(payload, out=None):
    text = json.dumps(sweeps.json_safe(payload), indent=2, sort_keys=True)
    print(text)
    if out:
        _writable(out)
        Path(out).write_text(text + "\n")


def _writable(path):
    parent = Path(path).resolve().parent
    if not parent.is_dir():
        raise ParameterError("out", f"output directory {parent} does not exist")


def _rel_diff(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


# -- commands -----------------------------------------------------------------

def cmd_eval(settings) -> dict:
    p = engine_params(settings)
    obs = observables(p)
    scale = max(abs(obs.power), abs(obs.qdot_h), abs(obs.qdot_c))
    residual = obs.power - obs.qdot_h + obs.qdot_c
    result = asdict(obs)
    result.update(
        tau=p.tau, gamma=p.gamma, eta_C=p.eta_carnot,
        first_law_residual=abs(residual) / scale if scale else 0.0,
        params={k: getattr(p, "lam" if k == "lambda" else k) for k in ENGINE_KEYS},
    )
    return result


def _numeric_optimum(obj, fix, fixed_value, r, rate):
    f = ht.objective(obj)
    if fix is FixedFrequency.W_H:
        bracket = ScalarBracket(r.tau * fixed_value, fixed_value)
        x, value = maximize_scalar(lambda w_c: f(fixed_value, w_c, r, rate), bracket)
        w_h, w_c = fixed_value, x
    else:
        bracket = ScalarBracket(fixed_value, fixed_value / r.tau)
        x, value = maximize_scalar(lambda w_h: f(w_h, fixed_value, r, rate), bracket)
        w_h, w_c = x, fixed_value
    return {"free_frequency": x, "objective_value": value, "efficiency": 1.0 - w_c / w_h}


def cmd_optimize(settings) -> dict:
    obj = _enum(ObjectiveKind, settings, "objective")
    fix_name = settings.get("fix")
    r = reduced_params(settings)
    if fix_name == "both":
        ht.maximize_two_parameter(obj, r)
    fix = _enum(FixedFrequency, settings, "fix")
    fixed_value = _number(settings, "fixed_value", 1.0)
    rate = _number(settings, "rate", 1.0)
    if not (fixed_value > 0 and math.isfinite(fixed_value)):
        raise ParameterError("fixed_value")
    if not (rate > 0 and math.isfinite(rate)):
        raise ParameterError("rate")

    closed = asdict(ht.optimum(obj, fix, r, fixed_value, rate))
    numeric = _numeric_optimum(obj, fix, fixed_value, r, rate)
    return {
        "objective": obj.value,
        "fix": fix.value,
        "tau": r.tau,
        "gamma": r.gamma.value if r.is_limit else r.gamma,
        "eta_C": r.eta_carnot,
        "fixed_value": fixed_value,
        "closed_form": closed,
        "numeric": numeric,
        "relative_difference": {
            k: _rel_diff(closed[k], numeric[k]) for k in ("free_frequency", "objective_value", "efficiency")
        },
    }


def _sidecar(path):
    return str(path) + ".meta.json"


def cmd_sweep(settings) -> dict:
    kind = settings.get("kind")
    if kind is None:
        raise ParameterError("kind", f"kind is required ({'|'.join(sweeps.SWEEP_KINDS)})")
    lo = settings.get("lo")
    hi = settings.get("hi")
    count = _integer(settings, "count", 101)
    config = RunConfig(
        sweep_range=(lo, hi, count),
        output_path=settings.get("out") or f"{kind}.csv",
        precision=_integer(settings, "precision", 12),
    )
    table = sweeps.sweep(kind,
                         None if lo is None else _number(settings, "lo"),
                         None if hi is None else _number(settings, "hi"),
                         count)
    _writable(config.output_path)
    sweeps.write_table(table, config.output_path, config.precision)
    eta = table.column("eta_C")
    sweeps.write_json(_sidecar(config.output_path), {
        "kind": kind, "columns": list(table.columns), "rows": len(table.rows),
        "eta_C_range": [eta[0], eta[-1]], "precision": config.precision,
        "finite_gammas": list(sweeps.FINITE_GAMMAS),
    })
    figure = settings.get("figure")
    if figure:
        from .plotting import plot_sweep

        _writable(figure)
        plot_sweep(table, figure)
    return {"kind": kind, "csv": config.output_path, "rows": len(table.rows),
            "columns": list(table.columns), "figure": figure}


def _bounds(settings):
    defaults = sweeps.SURFACE_BOUNDS
    return ((_number(settings, "wh_lo", defaults[0][0]), _number(settings, "wh_hi", defaults[0][1])),
            (_number(settings, "wc_lo", defaults[1][0]), _number(settings, "wc_hi", defaults[1][1])))


def cmd_surface(settings) -> dict:
    p = engine_params(settings, need_frequencies=False)
    resolution = _integer(settings, "resolution", 200)
    if resolution < 2:
        raise ParameterError("resolution", "resolution must be at least 2")
    precision = sweeps.check_precision(_integer(settings, "precision", 12))
    refine_tol = _number(settings, "refine_tol", 1e-8)
    out = settings.get("out") or "surface.csv"
    _writable(out)
    surface = sweeps.eco_surface(p, _bounds(settings), resolution, refine_tol)
    sweeps.write_surface(surface, out, precision)
    summary = asdict(surface.result)
    summary.update(csv=out, bounds=_bounds(settings), refine_tol=refine_tol,
                   params={k: getattr(p, "lam" if k == "lambda" else k)
                           for k in ENGINE_KEYS if k not in ("w_h", "w_c")})
    sweeps.write_json(_sidecar(out), summary)
    figure = settings.get("figure")
    if figure:
        from .plotting import plot_surface

        _writable(figure)
        plot_surface(surface, figure)
        summary["figure"] = figure
    return summary


# -- argument parsing ---------------------------------------------------------

def _add_engine_flags(p, frequencies=True):
    p.add_argument("--gamma-h", dest="gamma_h", type=float)
    p.add_argument("--gamma-c", dest="gamma_c", type=float)
    p.add_argument("--lambda", dest="lambda", type=float, help="field coupling strength")
    p.add_argument("--t-h", dest="t_h", type=float)
    p.add_argument("--t-c", dest="t_c", type=float)
    if frequencies:
        p.add_argument("--w-h", dest="w_h", type=float)
        p.add_argument("--w-c", dest="w_c", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssd-engine", description="Three-level laser heat engine: evaluation, optimization and sweeps.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat JSON file with parameter values; flags override it")
    common.add_argument("--out", help="output file")
    common.add_argument("--precision", type=int, help="significant digits in CSV output (6-17, default 12)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="observables at one operating point")
    _add_engine_flags(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("optimize", parents=[common], help="high-temperature optimum, closed form and numeric")
    p.add_argument("--objective", choices=[m.value for m in ObjectiveKind])
    p.add_argument("--fix", choices=[m.value for m in FixedFrequency] + ["both"])
    p.add_argument("--tau", type=float)
    p.add_argument("--gamma", help="Gamma_h/Gamma_c, or 'zero' / 'inf' for the limits")
    p.add_argument("--fixed-value", dest="fixed_value", type=float, help="value of the fixed frequency (default 1)")
    p.add_argument("--rate", type=float, help="overall rate prefactor (default 1)")
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("sweep", parents=[common], help="eta_C sweep tables as CSV")
    p.add_argument("kind", nargs="?", choices=sweeps.SWEEP_KINDS)
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--figure", help="also render the curves to this image file")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("surface", parents=[common], help="exact ecological function over (w_h, w_c)")
    _add_engine_flags(p, frequencies=False)
    p.add_argument("--resolution", type=int, help="grid nodes per axis (default 200)")
    p.add_argument("--wh-lo", dest="wh_lo", type=float)
    p.add_argument("--wh-hi", dest="wh_hi", type=float)
    p.add_argument("--wc-lo", dest="wc_lo", type=float)
    p.add_argument("--wc-hi", dest="wc_hi", type=float)
    p.add_argument("--refine-tol", dest="refine_tol", type=float)
    p.add_argument("--figure", help="also render a contour plot to this image file")
    p.set_defaults(handler=cmd_surface)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        settings = merged_settings(args)
        result = args.handler(settings)
        out = settings.get("out") if args.command in ("eval", "optimize") else None
        _emit(result, out)
    except (ParameterError, TwoParameterOptimizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
