import math
import warnings

import numpy as np
import pytest
from scipy.special import binom

from varfrac import (
    DomainError,
    RelaxationProblem,
    SingularStepError,
    TimeSeries,
    cq_weights,
    kernel_pair,
    make_constant,
    make_exponential,
    reference_constant_solution,
    solve_cq,
    solve_lt,
)
from varfrac.contour import invert
from varfrac.relaxation import default_radius

E06_M1 = 0.41332734094310630  # E_0.6(-1), converged series in 50 digits


def test_solve_lt_unit_order():
    sol = solve_lt(RelaxationProblem(make_constant(1.0), 1.0, 1.0), [1.0])
    assert sol.values[0] == pytest.approx(math.exp(-1), abs=1e-10)


def test_solve_lt_constant_order():
    sol = solve_lt(RelaxationProblem(make_constant(0.6), 1.0, 1.0), [1.0])
    assert sol.values[0] == pytest.approx(E06_M1, abs=1e-8)


def test_solve_lt_regimes():
    problem = RelaxationProblem(make_exponential(0.6, 0.8, 2.0), 1.0, 1.0)
    y = solve_lt(problem, [0.1, 50.0]).values
    y1 = reference_constant_solution(0.6, 1.0, 1.0, [0.1, 50.0]).values
    y2 = reference_constant_solution(0.8, 1.0, 1.0, [0.1, 50.0]).values
    assert abs(y[0] - y1[0]) < abs(y[0] - y2[0])
    assert abs(y[1] - y2[1]) < abs(y[1] - y1[1])


def test_initial_value_recovery(family):
    sol = solve_lt(RelaxationProblem(family, 1.0, 1.0), [1e-4])
    assert abs(sol.values[0] - 1.0) < 0.02


def test_monotone_decay(family):
    t = np.logspace(-3, np.log10(50), 200)
    assert np.all(np.diff(solve_lt(RelaxationProblem(family, 1.0, 2.0), t).values) < 0)


def test_solve_lt_scales_with_y0():
    tr = make_exponential(0.3, 0.9, 0.5)
    t = np.array([0.2, 2.0])
    a = solve_lt(RelaxationProblem(tr, 0.7, 1.0), t).values
    b = solve_lt(RelaxationProblem(tr, 0.7, -3.0), t).values
    np.testing.assert_allclose(b, -3 * a, rtol=1e-13)


def test_solve_lt_rejects_bad_input():
    with pytest.raises(DomainError):
        solve_lt(RelaxationProblem(make_constant(0.5), 0.0), [1.0])
    with pytest.raises(DomainError):
        solve_lt(RelaxationProblem(make_constant(0.5)), [0.0, 1.0])
    with pytest.raises(DomainError):
        RelaxationProblem(make_constant(0.5), -1.0)


def test_solve_lt_warns_near_singular_denominator():
    # lambda huge enough that 1 + lambda Psi is tiny nowhere: no warning
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        solve_lt(RelaxationProblem(make_constant(0.5), 1e3), [1.0])
    with pytest.warns(RuntimeWarning, match="nearly singular"):
        solve_lt(RelaxationProblem(make_constant(0.5), 1.0), [1.0], warn_threshold=10.0)


def test_cq_weights_unit_integral():
    h = 0.37
    w = cq_weights(lambda s: 1 / s, h, 40).weights
    np.testing.assert_allclose(w, h, rtol=1e-10)


def test_cq_weights_half_order():
    h = 0.1
    scheme = cq_weights(lambda s: s**-0.5, h, 50)
    expected = h**0.5 * np.array([(-1) ** n * binom(-0.5, n) for n in range(51)])
    assert scheme.weights[:3] == pytest.approx([0.316228, 0.5 * 0.316228, 0.375 * 0.316228], rel=2e-6)
    np.testing.assert_allclose(scheme.weights, expected, rtol=1e-10)
    assert scheme.generator == "BDF1" and scheme.count == 50
    assert 0 < scheme.contour_radius < 1


def test_cq_weights_bdf2_unit_integral():
    # BDF2 weights of 1/s: coefficients of 2h / (3 - 4z + z^2) = h (1 - 3^-(n+1))
    h = 0.2
    w = cq_weights(lambda s: 1 / s, h, 30, "BDF2").weights
    n = np.arange(31)
    np.testing.assert_allclose(w, h * (1 - 3.0 ** -(n + 1)), rtol=1e-10)


def test_cq_weights_cumulative_integral():
    pair = kernel_pair(make_exponential(0.6, 0.8, 2.0))
    h, M = 0.01, 1000
    w = cq_weights(pair.psi_laplace, h, M).weights
    T = np.array([1.0, 5.0, 10.0])
    exact = invert(lambda s: pair.psi_laplace(s) / s, T)
    approx = np.cumsum(w)[(T / h).round().astype(int)]
    assert np.all(np.abs(approx - exact) < 10 * h)


def test_cq_weights_arguments():
    with pytest.raises(DomainError):
        cq_weights(lambda s: 1 / s, 0.0, 10)
    with pytest.raises(DomainError):
        cq_weights(lambda s: 1 / s, 0.1, 0)
    with pytest.raises(DomainError):
        cq_weights(lambda s: 1 / s, 0.1, 10, "BDF3")
    with pytest.raises(DomainError):
        cq_weights(lambda s: 1 / s, 0.1, 10, contour_radius=1.0)
    assert default_radius(100) ** (3 * 100 + 2) == pytest.approx(np.finfo(float).eps)


@pytest.mark.parametrize("exact_start", [True, False])
def test_solve_cq_unit_order(exact_start):
    problem = RelaxationProblem(make_constant(1.0), 1.0, 1.0)
    sol = solve_cq(problem, 1e-3, 1000, exact_start=exact_start)
    assert sol.times[0] == 0 and sol.values[0] == 1.0
    assert sol.values[-1] == pytest.approx(math.exp(-1), abs=5e-3)


@pytest.mark.parametrize("exact_start", [True, False])
def test_solve_cq_zero_rate(exact_start):
    sol = solve_cq(RelaxationProblem(make_exponential(0.6, 0.8, 2.0), 0.0, 1.7), 0.01, 100, exact_start=exact_start)
    np.testing.assert_array_equal(sol.values, 1.7)


def test_solve_cq_matches_solve_lt():
    problem = RelaxationProblem(make_exponential(0.6, 0.8, 2.0), 1.0, 1.0)
    cq = solve_cq(problem, 1e-3, 5000)
    lt = solve_lt(problem, cq.times[1:])
    assert np.max(np.abs(cq.values[1:] - lt.values)) <= 5e-3


def test_solve_cq_bdf2_is_more_accurate_away_from_origin():
    problem = RelaxationProblem(make_constant(0.5), 1.0, 1.0)
    ref = reference_constant_solution(0.5, 1.0, 1.0, [2.0]).values[0]
    e1 = abs(solve_cq(problem, 0.01, 200, "BDF1").values[-1] - ref)
    e2 = abs(solve_cq(problem, 0.01, 200, "BDF2").values[-1] - ref)
    assert e2 < e1


def test_solve_cq_singular_step(monkeypatch):
    import varfrac.relaxation as rel

    # weights with w_0 = -1/lambda make the implicit step singular
    monkeypatch.setattr(rel, "cq_weights", lambda *a, **k: rel.CQScheme(0.1, np.array([-1.0, 0.0]), "BDF1", 0.5))
    with pytest.raises(SingularStepError):
        solve_cq(RelaxationProblem(make_constant(0.5), 1.0, 1.0), 0.1, 1)


def test_reference_solution_values():
    assert reference_constant_solution(1.0, 1.0, 1.0, [1.0]).values[0] == pytest.approx(0.3678794, abs=1e-7)
    assert reference_constant_solution(0.6, 1.0, 1.0, [1.0]).values[0] == pytest.approx(0.4133, abs=5e-5)
    assert reference_constant_solution(0.8, 1.0, 1.0, [0.0]).values[0] == 1.0
    with pytest.raises(DomainError):
        reference_constant_solution(1.2, 1.0, 1.0, [1.0])


def test_time_series_validation():
    with pytest.raises(DomainError):
        TimeSeries([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(DomainError):
        TimeSeries([0.0, 1.0], [1.0])
    ts = TimeSeries([0.0, 0.5, 1.0], [3.0, 2.0, 1.0])
    assert len(ts) == 3 and ts.at(0.49) == 2.0
