import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssd_engine import hightemp as ht
from ssd_engine.exceptions import NumericalError, ParameterError
from ssd_engine.hightemp import FixedFrequency, ObjectiveKind, ReducedParams
from ssd_engine.numopt import (
    ScalarBracket,
    finite_diff_gradient,
    finite_diff_hessian,
    maximize_scalar,
    maximize_surface,
)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.2, 50.0), st.floats(0.1, 10.0))
def test_scalar_quadratic(center, curvature):
    x, fx = maximize_scalar(lambda x: -curvature * (x - center) ** 2 + 1.0, (0.1 * center, 3.0 * center))
    assert x == pytest.approx(center, rel=1e-9)
    assert fx == pytest.approx(1.0, abs=1e-15)


def test_scalar_skewed_function():
    # maximum of x exp(-x) at 1
    x, _ = maximize_scalar(lambda x: x * math.exp(-x), ScalarBracket(0.01, 20.0))
    assert x == pytest.approx(1.0, rel=1e-9)


def test_scalar_monotone_returns_endpoint():
    assert maximize_scalar(lambda x: x, (1.0, 2.0)) == (2.0, 2.0)
    assert maximize_scalar(lambda x: -x, (1.0, 2.0)) == (1.0, -1.0)


def test_scalar_plateau_prefers_smallest_abscissa():
    x, fx = maximize_scalar(lambda x: 1.0, (1.0, 2.0))
    assert (x, fx) == (1.0, 1.0)


def test_scalar_nonfinite_reports_abscissa():
    with pytest.raises(NumericalError, match="not finite"):
        maximize_scalar(lambda x: math.nan, (1.0, 2.0))


@pytest.mark.parametrize("bracket", [(2.0, 1.0), (0.0, 1.0), (-1.0, 1.0), (1.0, math.inf)])
def test_scalar_bad_bracket(bracket):
    with pytest.raises(ParameterError):
        maximize_scalar(lambda x: x, bracket)


def test_gradient_and_hessian():
    f = lambda x, y: math.sin(x) * math.exp(0.5 * y)
    x, y = 0.7, 1.3
    g = finite_diff_gradient(f, (x, y))
    np.testing.assert_allclose(g, [math.cos(x) * math.exp(0.5 * y), 0.5 * f(x, y)], rtol=1e-9)
    h = finite_diff_hessian(f, (x, y))
    expected = [[-f(x, y), 0.5 * math.cos(x) * math.exp(0.5 * y)],
                [0.5 * math.cos(x) * math.exp(0.5 * y), 0.25 * f(x, y)]]
    np.testing.assert_allclose(h, expected, rtol=1e-6)
    with pytest.raises(ParameterError):
        finite_diff_gradient(f, (x, y), step=0.0)


def _bump(x, y):
    return 1.0 - (x - 3.3) ** 2 - 2.0 * (y - 1.7) ** 2 + 0.5 * (x - 3.3) * (y - 1.7)


def test_surface_interior_maximum():
    r = maximize_surface(_bump, ((1.0, 6.0), (0.5, 4.0)), coarse_n=40)
    assert r.refined and not r.on_boundary and not r.coarse_grid
    assert (r.w_h_star, r.w_c_star) == (pytest.approx(3.3, abs=1e-8), pytest.approx(1.7, abs=1e-8))
    assert r.value == pytest.approx(1.0, abs=1e-14)
    assert r.gradient_norm < 1e-8


def test_surface_boundary_maximum_not_refined():
    r = maximize_surface(lambda x, y: x + y, ((1.0, 2.0), (1.0, 2.0)), coarse_n=20)
    assert r.on_boundary and not r.refined
    assert (r.w_h_star, r.w_c_star) == (2.0, 2.0)


def test_surface_coarse_grid_flag():
    r = maximize_surface(_bump, ((1.0, 6.0), (0.5, 4.0)), coarse_n=2)
    assert r.coarse_grid and not r.refined
    assert r.grid_resolution == 2


def test_surface_ties_take_lexicographic_minimum():
    r = maximize_surface(lambda x, y: 0.0, ((1.0, 2.0), (1.0, 2.0)), coarse_n=5)
    assert (r.w_h_star, r.w_c_star) == (1.0, 1.0)


def test_surface_uses_supplied_values():
    wh = np.linspace(1.0, 6.0, 30)
    wc = np.linspace(0.5, 4.0, 30)
    values = np.array([[_bump(x, y) for y in wc] for x in wh])
    r = maximize_surface(_bump, ((1.0, 6.0), (0.5, 4.0)), coarse_n=30, values=values)
    assert r.w_h_star == pytest.approx(3.3, abs=1e-8)
    with pytest.raises(ValueError):
        maximize_surface(_bump, ((1.0, 6.0), (0.5, 4.0)), coarse_n=20, values=values)


def test_surface_rejects_nonfinite_and_bad_bounds():
    with pytest.raises(NumericalError):
        maximize_surface(lambda x, y: math.nan, ((1.0, 2.0), (1.0, 2.0)), coarse_n=4)
    with pytest.raises(ParameterError):
        maximize_surface(_bump, ((2.0, 1.0), (1.0, 2.0)))
    with pytest.raises(ParameterError):
        maximize_surface(_bump, ((1.0, 2.0), (1.0, 2.0)), coarse_n=1)



def test_scalar_examples():
    r = ReducedParams(0.5, 1.0)
    x, _ = maximize_scalar(lambda w: ht.reduced_eco(1.0, w, r), (0.5, 1.0))
    assert x == pytest.approx((math.sqrt(5) - 1) / 2, rel=1e-9)
    x, _ = maximize_scalar(lambda w: -(w - 2.0) ** 2, (0.01, 5.0))
    assert x == pytest.approx(2.0, rel=1e-9)
    r = ReducedParams(0.25, 1e8)
    x, _ = maximize_scalar(lambda w: ht.reduced_power(1.0, w, r), (0.25, 1.0))
    assert x == pytest.approx(0.5, rel=1e-7)


def _free_objective(obj, fix, r):
    f = ht.objective(obj)
    if fix is FixedFrequency.W_H:
        return (lambda w: f(1.0, w, r)), (r.tau, 1.0)
    return (lambda w: f(w, 1.0, r)), (1.0, 1.0 / r.tau)


def test_scalar_reproduces_closed_forms_on_grid():
    worst = 0.0
    for tau in np.linspace(0.03, 0.97, 20):
        for g in np.logspace(-2, 2, 20):
            r = ReducedParams(tau, g)
            for obj in ObjectiveKind:
                for fix in FixedFrequency:
                    f, bracket = _free_objective(obj, fix, r)
                    x, _ = maximize_scalar(f, bracket)
                    exact = ht.optimal_frequency(obj, fix, 1.0, r)
                    worst = max(worst, abs(x - exact) / exact)
    assert worst < 1e-8


def test_gradient_examples():
    g = finite_diff_gradient(lambda x, y: 2.5 * x - 0.75 * y + 4.0, (1.3, -2.0))
    np.testing.assert_allclose(g, [2.5, -0.75], rtol=1e-10)
    g = finite_diff_gradient(lambda x, y: x * y, (2.0, 3.0), step=1e-4)
    np.testing.assert_allclose(g, [3.0, 2.0], atol=1e-8)
    # stationarity of the reduced EF at its closed-form optimum
    r = ReducedParams(0.5, 1.0)
    w = ht.optimal_frequency(ObjectiveKind.ECOLOGICAL, FixedFrequency.W_H, 1.0, r)
    slope = finite_diff_gradient(lambda x: ht.reduced_eco(1.0, x, r), (w,))
    assert abs(slope[0]) < 1e-6


def test_gradient_second_order_convergence():
    f = lambda x, y: math.exp(x) * math.cos(y)
    exact = np.array([math.exp(0.4) * math.cos(0.9), -math.exp(0.4) * math.sin(0.9)])
    errors = [np.linalg.norm(finite_diff_gradient(f, (0.4, 0.9), step=h) - exact) for h in (1e-2, 5e-3)]
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.02)
    with pytest.raises(NumericalError):
        finite_diff_gradient(lambda x, y: math.inf, (1.0, 1.0))


def test_surface_trivial_paraboloid():
    r = maximize_surface(lambda x, y: -((x - 3.0) ** 2 + (y - 1.0) ** 2), ((0.5, 6.0), (0.2, 4.0)), coarse_n=25)
    assert r.refined
    assert (r.w_h_star, r.w_c_star) == (pytest.approx(3.0, abs=1e-8), pytest.approx(1.0, abs=1e-8))


def test_surface_invariant_under_finer_grid():
    bounds = ((1.0, 6.0), (0.5, 4.0))
    a = maximize_surface(_bump, bounds, coarse_n=20)
    b = maximize_surface(_bump, bounds, coarse_n=40)
    assert abs(a.w_h_star - b.w_h_star) < 1e-8 and abs(a.w_c_star - b.w_c_star) < 1e-8


def test_reduced_eco_surface_has_no_interior_maximum():
    # the reduced EF is homogeneous of degree one, so the maximum runs to the boundary
    r = ReducedParams(0.25, 1.0)
    res = maximize_surface(lambda x, y: ht.reduced_eco(x, y, r), ((0.1, 60.0), (0.1, 30.0)), coarse_n=60)
    assert res.on_boundary and not res.refined
