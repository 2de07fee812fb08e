import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapbound.services.errors import ArgumentError, PreconditionError
from trapbound.services.expr import FunctionDef
from trapbound.services.meanvalue import F, F_prime, check_positive, secant_slope, solve_mvt
from trapbound.services.quad import Interval


def test_F_at_interior_point(recip_sq, one_two):
    assert F(recip_sq, one_two, 1.5) == pytest.approx(-1.0 / 3.0, abs=1e-10)


def test_F_endpoint_extensions(recip_sq, one_two):
    assert F(recip_sq, one_two, 1.0) == pytest.approx(-0.5, abs=1e-10)
    assert F(recip_sq, one_two, 2.0) == pytest.approx(-0.25, abs=1e-10)


def test_F_outside_interval(recip_sq, one_two):
    with pytest.raises(ArgumentError):
        F(recip_sq, one_two, 2.5)


def test_secant_slope(recip_sq, one_two):
    expected = (F(recip_sq, one_two, 2.0) - F(recip_sq, one_two, 1.0)) / one_two.length
    assert secant_slope(recip_sq, one_two) == pytest.approx(0.25, abs=1e-10)
    assert secant_slope(recip_sq, one_two) == pytest.approx(expected, abs=1e-10)


def test_F_prime_closed_form(recip_sq, one_two, sqrt2):
    # F(t) = -1/(2t) here, so F'(t) = 1/(2t^2)
    assert F_prime(recip_sq, one_two, sqrt2) == pytest.approx(0.25, abs=1e-9)
    assert F_prime(recip_sq, one_two, 1.25) == pytest.approx(1.0 / (2 * 1.25**2), abs=1e-9)


def test_F_prime_needs_open_interval(recip_sq, one_two):
    with pytest.raises(ArgumentError):
        F_prime(recip_sq, one_two, 1.0)


@given(t=st.floats(min_value=0.1, max_value=0.9))
def test_F_prime_matches_central_difference(t):
    f = FunctionDef.from_text("exp(s)")
    iv = Interval(0.0, 1.0)
    h = 1e-4
    numeric = (F(f, iv, t + h) - F(f, iv, t - h)) / (2 * h)
    assert F_prime(f, iv, t) == pytest.approx(numeric, abs=1e-5)


# ============================================================================
# Solver
# ============================================================================


def test_solve_recip_sq_gives_geometric_mean(recip_sq, one_two, sqrt2, grid_n):
    point = solve_mvt(recip_sq, one_two, grid_n=grid_n)
    assert not point.degenerate
    assert point.x == pytest.approx(sqrt2, abs=1e-8)
    assert point.roots == pytest.approx((sqrt2,), abs=1e-8)
    assert point.bracket is not None
    assert point.bracket[0] <= point.x <= point.bracket[1]
    assert point.secant == pytest.approx(0.25, abs=1e-10)


def test_solve_recip_sq_on_one_four(recip_sq, grid_n):
    assert solve_mvt(recip_sq, Interval(1.0, 4.0), grid_n=grid_n).x == pytest.approx(2.0, abs=1e-8)


def test_cubic_solves_at_midpoint(grid_n):
    point = solve_mvt(FunctionDef.from_text("s^3"), Interval(1.0, 2.0), grid_n=grid_n)
    assert not point.degenerate
    assert point.x == pytest.approx(1.5, abs=1e-8)


@pytest.mark.parametrize("text, a, b", [("s^2", 0.0, 1.0), ("3", 0.0, 2.0), ("2*s + 1", 0.0, 4.0)])
def test_degenerate_cases_return_midpoint(text, a, b, grid_n):
    point = solve_mvt(FunctionDef.from_text(text), Interval(a, b), grid_n=grid_n)
    assert point.degenerate
    assert point.x == (a + b) / 2
    assert point.roots == ((a + b) / 2,)
    assert point.bracket is None


def test_residual_is_small(grid_n):
    point = solve_mvt(FunctionDef.from_text("exp(s)"), Interval(0.0, 1.0), grid_n=grid_n)
    assert 0.0 < point.x < 1.0
    assert point.residual < 1e-9


def test_symmetric_integrand_has_mirrored_roots(grid_n):
    point = solve_mvt(FunctionDef.from_text("cos(s - 1) + 2"), Interval(0.0, 2.0), grid_n=grid_n)
    assert point.x in point.roots
    for root in point.roots:
        assert any(abs((2.0 - root) - other) < 1e-7 for other in point.roots)


def test_every_corpus_entry_has_an_interior_point(corpus_entry, grid_n):
    iv = corpus_entry.interval()
    point = solve_mvt(corpus_entry.function(), iv, grid_n=grid_n)
    assert iv.a < point.x < iv.b
    assert point.residual < 1e-7
    assert point.x in point.roots


def test_negative_integrand_is_rejected(grid_n):
    with pytest.raises(PreconditionError) as exc:
        solve_mvt(FunctionDef.from_text("s - 10"), Interval(0.0, 1.0), grid_n=grid_n)
    assert exc.value.value < 0


def test_zero_at_a_sample_is_allowed():
    check_positive(FunctionDef.from_text("ln(s)"), Interval(1.0, math.e))


@pytest.mark.parametrize("kwargs", [{"grid_n": 1}, {"tol": 0.0}])
def test_solver_arguments(kwargs, recip_sq, one_two):
    with pytest.raises(ArgumentError):
        solve_mvt(recip_sq, one_two, **kwargs)


@pytest.mark.parametrize("u", [0.05, 0.2, 0.5, 0.8, 0.99])
def test_F_is_odd_about_the_midpoint_for_symmetric_integrand(u):
    f = FunctionDef.from_text("cos(s - 1) + 2")
    iv = Interval(0.0, 2.0)
    assert F(f, iv, 1.0 + u) == pytest.approx(-F(f, iv, 1.0 - u), abs=1e-9)


@pytest.mark.parametrize("b, expected", [(2.0, math.sqrt(2.0)), (4.0, 2.0)])
def test_default_grid_gives_geometric_mean(recip_sq, b, expected):
    assert solve_mvt(recip_sq, Interval(1.0, b)).x == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("text", ["1", "1000", "s^2 + 1", "3*s + 2"])
def test_degenerate_detection_on_short_intervals(text):
    iv = Interval(0.0, 1e-3)
    point = solve_mvt(FunctionDef.from_text(text), iv)
    assert point.degenerate
    assert point.x == iv.midpoint
    assert point.roots == (iv.midpoint,)


@pytest.mark.parametrize("a, b", [(0.0, 1e-3), (5.0, 5.0 + 1e-4), (0.0, 50.0)])
def test_degenerate_detection_is_scale_free(a, b, grid_n):
    assert solve_mvt(FunctionDef.from_text("1"), Interval(a, b), grid_n=grid_n).degenerate


def test_short_interval_keeps_genuine_roots(recip_sq):
    iv = Interval(1.0, 1.01)
    point = solve_mvt(recip_sq, iv, grid_n=64)
    assert not point.degenerate
    assert point.x == pytest.approx(math.sqrt(1.01), abs=1e-8)
