import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapbound.services.errors import ArgumentError, ConvergenceError, DifferentiationError, ExprDomainError
from trapbound.services.expr import FunctionDef
from trapbound.services.quad import (
    Interval,
    composite_simpson,
    composite_trapezoid,
    integrate,
    sup_abs_derivative,
)


@pytest.mark.parametrize(
    "a, b",
    [(2.0, 1.0), (1.0, 1.0), (0.0, math.inf), (math.nan, 1.0)],
)
def test_interval_rejects_bad_endpoints(a, b):
    with pytest.raises(ArgumentError):
        Interval(a, b)


def test_interval_properties():
    iv = Interval(1.0, 3.0)
    assert iv.length == 2.0
    assert iv.midpoint == 2.0
    assert iv.contains(1.0)
    assert not iv.contains(1.0, open_=True)
    assert str(iv) == "[1, 3]"


# ============================================================================
# Adaptive Simpson
# ============================================================================


@pytest.mark.parametrize(
    "text, a, b, exact",
    [
        ("s^2", 0.0, 1.0, 1.0 / 3.0),
        ("exp(s)", 0.0, 1.0, math.e - 1.0),
        ("1/s^2", 1.0, 2.0, 0.5),
        ("1/s", 1.0, 2.0, math.log(2.0)),
        ("ln(s)", 1.0, math.e, 1.0),
        ("sin(s)", 0.0, math.pi, 2.0),
        ("s^3", 1.0, 2.0, 3.75),
        ("s^-0.5", 1.0, 4.0, 2.0),
    ],
)
def test_integrate_known_values(text, a, b, exact):
    result = integrate(FunctionDef.from_text(text), Interval(a, b), tol=1e-10)
    assert result.value == pytest.approx(exact, abs=1e-10)
    assert result.err_estimate <= 1e-10
    assert result.evals >= 5


def test_cubic_is_exact_on_first_split():
    result = integrate(FunctionDef.from_text("s^3"), Interval(0.0, 2.0))
    assert result.value == pytest.approx(4.0, rel=1e-15)
    assert result.evals == 5


@given(
    a=st.floats(min_value=-5.0, max_value=5.0),
    width=st.floats(min_value=0.01, max_value=5.0),
)
def test_integrate_polynomial_on_random_intervals(a, width):
    b = a + width
    exact = (b**4 - a**4) / 4 + (b**2 - a**2) / 2
    result = integrate(FunctionDef.from_text("s^3 + s"), Interval(a, b))
    assert result.value == pytest.approx(exact, rel=1e-9, abs=1e-9)


def test_depth_cap_raises_convergence_error():
    with pytest.raises(ConvergenceError) as exc:
        integrate(FunctionDef.from_text("sqrt(s)"), Interval(0.0, 1.0), tol=1e-14)
    assert exc.value.best_estimate == pytest.approx(2.0 / 3.0, abs=1e-3)
    assert exc.value.evals > 0


def test_non_positive_tolerance():
    with pytest.raises(ArgumentError):
        integrate(FunctionDef.from_text("s"), Interval(0.0, 1.0), tol=0.0)


def test_domain_error_propagates():
    with pytest.raises(ExprDomainError):
        integrate(FunctionDef.from_text("1/s"), Interval(0.0, 1.0))


# ============================================================================
# Composite rules
# ============================================================================


def test_composite_trapezoid():
    f = FunctionDef.from_text("s^2")
    assert composite_trapezoid(f, Interval(0.0, 1.0)) == pytest.approx(0.5)
    assert composite_trapezoid(f, Interval(0.0, 1.0), n=2) == pytest.approx(0.375)


def test_composite_simpson():
    assert composite_simpson(FunctionDef.from_text("1/s"), Interval(1.0, 2.0)) == pytest.approx(25.0 / 36.0)
    assert composite_simpson(FunctionDef.from_text("s^3"), Interval(0.0, 2.0), n=4) == pytest.approx(4.0)


@pytest.mark.parametrize("n", [0, 1, 3])
def test_composite_simpson_needs_even_panels(n):
    with pytest.raises(ArgumentError):
        composite_simpson(FunctionDef.from_text("s"), Interval(0.0, 1.0), n=n)


def test_composite_trapezoid_needs_a_panel():
    with pytest.raises(ArgumentError):
        composite_trapezoid(FunctionDef.from_text("s"), Interval(0.0, 1.0), n=0)


# ============================================================================
# Sup-norm of derivatives
# ============================================================================


def test_sup_of_fourth_derivative_of_sine():
    assert sup_abs_derivative(FunctionDef.from_text("sin(s)"), 4, Interval(0.0, 3.2)) == pytest.approx(1.0, abs=1e-9)


def test_sup_at_an_endpoint():
    assert sup_abs_derivative(FunctionDef.from_text("1/s^2"), 2, Interval(1.0, 2.0)) == pytest.approx(6.0)


def test_sup_of_constant_second_derivative():
    assert sup_abs_derivative(FunctionDef.from_text("s^2"), 2, Interval(0.0, 1.0)) == pytest.approx(2.0)


def test_sup_needs_positive_order():
    with pytest.raises(ArgumentError):
        sup_abs_derivative(FunctionDef.from_text("s"), 0, Interval(0.0, 1.0))


def test_sup_of_abs_is_unavailable():
    with pytest.raises(DifferentiationError):
        sup_abs_derivative(FunctionDef.from_text("abs(s - 0.5)"), 2, Interval(0.0, 1.0))
