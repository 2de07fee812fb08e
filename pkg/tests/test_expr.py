import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapbound.services.errors import DifferentiationError, ExprDomainError, ExprSyntaxError
from trapbound.services.expr import (
    Binary,
    Constant,
    FunctionDef,
    Unary,
    Variable,
    differentiate,
    evaluate,
    nth_derivative,
    parse,
    to_text,
)

S = Variable()


# ============================================================================
# Parsing
# ============================================================================


def test_power_binds_tighter_than_unary_minus():
    assert parse("-s^2") == Unary("neg", Binary("^", S, Constant(2.0)))
    assert evaluate(parse("-s^2"), 3.0) == -9.0


def test_power_is_right_associative():
    assert evaluate(parse("2^3^2"), 0.0) == 512.0
    assert evaluate(parse("(2^3)^2"), 0.0) == 64.0


def test_negative_exponent_without_parentheses():
    assert evaluate(parse("2^-1"), 0.0) == 0.5


@pytest.mark.parametrize(
    "text, s, expected",
    [
        ("1 + 2*3", 0.0, 7.0),
        ("(1 + 2)*3", 0.0, 9.0),
        ("8/4/2", 0.0, 1.0),
        ("1 - 2 - 3", 0.0, -4.0),
        ("1/s^2", 2.0, 0.25),
        ("ln(s)", math.e, 1.0),
        ("exp(0)", 0.0, 1.0),
        ("sqrt(s)*sqrt(s)", 4.0, 4.0),
        ("abs(s - 3)", 1.0, 2.0),
        ("2.5e1 + .5", 0.0, 25.5),
        ("  s  ", 7.0, 7.0),
    ],
)
def test_evaluate(text, s, expected):
    assert evaluate(parse(text), s) == pytest.approx(expected, rel=1e-15)


def test_syntax_error_reports_offset_and_expectation():
    with pytest.raises(ExprSyntaxError) as exc:
        parse("2*+s")
    assert exc.value.offset == 2
    assert "expected number, 's', function or '('" in exc.value.message


@pytest.mark.parametrize(
    "text, offset",
    [
        ("(s + 1", 6),
        ("s s", 2),
        ("foo(s)", 0),
        ("s + ", 4),
        ("ln s", 3),
        ("s $ 2", 2),
        ("", 0),
    ],
)
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as exc:
        parse(text)
    assert exc.value.offset == offset


def test_unknown_identifier():
    with pytest.raises(ExprSyntaxError, match="Unknown identifier 'x'"):
        parse("x + 1")


# ============================================================================
# Printing
# ============================================================================


@pytest.mark.parametrize(
    "text, printed",
    [
        ("(s+1)*(s-1)", "(s + 1)*(s - 1)"),
        ("s-(s-1)", "s - (s - 1)"),
        ("(s-1)-s", "s - 1 - s"),
        ("(-s)^2", "(-s)^2"),
        ("-s^2", "-s^2"),
        ("2^3^2", "2^3^2"),
        ("(2^3)^2", "(2^3)^2"),
        ("1/s^2", "1/s^2"),
        ("s/(s*s)", "s/(s*s)"),
        ("s^(s*2)", "s^(s*2)"),
        ("ln(s)^2", "ln(s)^2"),
        ("s^0.5", "s^0.5"),
        ("-(s+1)", "-(s + 1)"),
    ],
)
def test_to_text(text, printed):
    assert to_text(parse(text)) == printed


def test_negative_constant_is_parenthesised():
    assert to_text(Constant(-0.5)) == "(-0.5)"
    assert to_text(Binary("*", Constant(-2.0), S)) == "(-2)*s"


_leaves = st.one_of(
    st.just(S),
    st.integers(min_value=0, max_value=20).map(lambda n: Constant(float(n))),
    st.sampled_from([0.5, 2.5, 1e-3, 1e20]).map(Constant),
)


def _extend(children: st.SearchStrategy) -> st.SearchStrategy:
    return st.one_of(
        st.builds(Unary, st.sampled_from(["neg", "ln", "exp", "sin", "cos", "sqrt", "abs"]), children),
        st.builds(Binary, st.sampled_from(["+", "-", "*", "/", "^"]), children, children),
    )


@given(st.recursive(_leaves, _extend, max_leaves=12))
def test_print_then_parse_returns_the_same_tree(e):
    assert parse(to_text(e)) == e


# ============================================================================
# Domain errors
# ============================================================================


@pytest.mark.parametrize(
    "text, s, fragment",
    [
        ("ln(s)", 0.0, "ln(s)"),
        ("1/s", 0.0, "1/s"),
        ("sqrt(s)", -1.0, "sqrt(s)"),
        ("s^0.5", -1.0, "s^0.5"),
        ("s^s", 0.0, "s^s"),
        ("0^-1", 1.0, "0^-1"),
        ("exp(s)", 1000.0, "exp(s)"),
    ],
)
def test_domain_error_names_the_subexpression(text, s, fragment):
    with pytest.raises(ExprDomainError) as exc:
        evaluate(parse(text), s)
    assert fragment in exc.value.message
    assert exc.value.s == s


def test_negative_base_with_integer_exponent_is_allowed():
    assert evaluate(parse("s^2"), -3.0) == 9.0
    assert evaluate(parse("s^-1"), -2.0) == -0.5


# ============================================================================
# Differentiation
# ============================================================================


def test_derivative_of_log():
    assert differentiate(parse("ln(s)")) == Binary("/", Constant(1.0), S)


def test_constant_folding_only_between_constants():
    assert differentiate(Binary("*", Constant(3.0), Constant(2.0))) == Constant(0.0)
    # 0*s is left alone: only Constant-op-Constant folds
    assert differentiate(parse("3*s")) == Binary("+", Binary("*", Constant(0.0), S), Constant(3.0))


def test_derivative_of_cube():
    assert evaluate(differentiate(parse("s^3")), 2.0) == pytest.approx(12.0)


@pytest.mark.parametrize(
    "text, exact",
    [
        ("sin(s)*exp(s)", lambda s: math.exp(s) * (math.sin(s) + math.cos(s))),
        ("s^s", lambda s: s**s * (math.log(s) + 1)),
        ("sqrt(s)/(1 + s^2)", lambda s: (1 + s**2 - 4 * s**2) / (2 * math.sqrt(s) * (1 + s**2) ** 2)),
        ("ln(s^2 + 1)", lambda s: 2 * s / (s**2 + 1)),
        ("cos(2*s)^3", lambda s: -6 * math.cos(2 * s) ** 2 * math.sin(2 * s)),
        ("2^s", lambda s: math.log(2) * 2**s),
    ],
)
@given(s=st.floats(min_value=0.5, max_value=2.0))
def test_derivative_matches_closed_form(text, exact, s):
    assert evaluate(differentiate(parse(text)), s) == pytest.approx(exact(s), rel=1e-10, abs=1e-12)


def test_abs_is_not_differentiable():
    with pytest.raises(DifferentiationError):
        differentiate(parse("abs(s - 1)"))


def test_fourth_derivative_of_quartic():
    fourth = nth_derivative(parse("s^4"), 4)
    for s in (0.5, 1.0, 3.0):
        assert evaluate(fourth, s) == pytest.approx(24.0)


def test_negative_derivative_order():
    with pytest.raises(ValueError):
        nth_derivative(S, -1)


# ============================================================================
# FunctionDef
# ============================================================================


def test_function_def_labels_and_calls():
    f = FunctionDef.from_text("1/s^2", name="recip_sq")
    assert f.label == "recip_sq"
    assert f.text == "1/s^2"
    assert f(2.0) == 0.25
    assert FunctionDef.from_text("s + 1").label == "s + 1"


def test_function_def_derivative():
    f = FunctionDef.from_text("1/s^2", name="recip_sq")
    second = f.derivative(2)
    assert second.name == "d2[recip_sq]"
    assert second(1.0) == pytest.approx(6.0)
    assert second(2.0) == pytest.approx(6.0 / 16.0)
