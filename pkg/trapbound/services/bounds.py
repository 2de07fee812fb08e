"""Two-sided bounds for the trapezoid error of a non-negative integrand.

For x in (a, b) put M = max(x-a, b-x), m = min(x-a, b-x) and
avg = (1/(b-a)) ∫_a^b f. The envelope reads

    (b-a)^2/(2M^2) [avg - M^2 f(x)/((x-a)(b-x))]
        <= (f(a)+f(b))/2 - avg
        <= (b-a)^2/(2m^2) [avg - m^2 f(x)/((x-a)(b-x))]

and is guaranteed when x solves F'(x) = secant (see meanvalue). Every function
here accepts an arbitrary interior x so callers can explore where the envelope
holds and where it does not.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

from trapbound.services.errors import ArgumentError
from trapbound.services.expr import FunctionDef
from trapbound.services.meanvalue import F_prime, check_positive, secant_slope
from trapbound.services.quad import DEFAULT_TOL, Interval, integrate, sup_abs_derivative

logger = logging.getLogger(__name__)

INEQUALITY_SLACK = 1e-9
HERMITE_HADAMARD_SLACK = 1e-12
GEOMETRY_CROSS_CHECK = 1e-14
DELTA_CROSS_CHECK = 1e-9
DEFAULT_CLASS_TOL = 1e-8
SIMPSON_BOUND_DIVISOR = 90.0


def within(lower: float, upper: float, slack: float = INEQUALITY_SLACK) -> bool:
    """lower <= upper, allowing slack scaled by the magnitude of the operands."""
    return lower <= upper + slack * (1.0 + max(abs(lower), abs(upper)))


# ============================================================================
# GEOMETRY
# ============================================================================


@dataclass(frozen=True)
class Geometry:
    """Distances from x to the nearer (m) and farther (M) endpoint."""

    x: float
    M: float
    m: float


def geometry(iv: Interval, x: float) -> Geometry:
    """
    Compute M and m for an interior point x.

    Both the max/min form and the midpoint-distance form are computed; a
    disagreement beyond rounding is logged.

    Raises:
        ArgumentError: If x is not strictly inside (a, b)
    """
    if not iv.contains(x, open_=True):
        raise ArgumentError(f"x must lie strictly inside {iv}, got {x!r}", "a < x < b")

    left, right = x - iv.a, iv.b - x
    big, small = max(left, right), min(left, right)

    offset = abs(x - iv.midpoint)
    half = iv.length / 2
    limit = GEOMETRY_CROSS_CHECK * max(1.0, abs(iv.a), abs(iv.b))
    if abs(big - (half + offset)) > limit or abs(small - (half - offset)) > limit:
        logger.warning(f"Geometry forms disagree at x={x!r} on {iv}: M={big!r} vs {half + offset!r}")

    return Geometry(x=x, M=big, m=small)


# ============================================================================
# ENVELOPE
# ============================================================================


@dataclass(frozen=True)
class Envelope:
    """The three members of the bound at a given x, plus the gap."""

    lower: float
    middle: float
    upper: float
    geometry: Geometry
    delta: float
    integral: float
    x_is_mvt: bool = False

    def sandwich_ok(self, slack: float = INEQUALITY_SLACK) -> bool:
        return within(self.lower, self.middle, slack) and within(self.middle, self.upper, slack)


def _gap_from(iv: Interval, geo: Geometry, integral: float) -> float:
    M2, m2 = geo.M**2, geo.m**2
    return (M2 - m2) / (2.0 * m2 * M2) * iv.length * integral


def envelope(
    f: FunctionDef,
    iv: Interval,
    x: float,
    x_is_mvt: bool = False,
    tol: float = DEFAULT_TOL,
) -> Envelope:
    """
    Evaluate the lower bound, the trapezoid-minus-average middle and the upper bound.

    Args:
        f: Non-negative integrand
        iv: Interval [a, b]
        x: Interior point; the sandwich is guaranteed only at a mean-value point
        x_is_mvt: Set by the caller when x came from solve_mvt
        tol: Quadrature tolerance

    Returns:
        Envelope

    Raises:
        PreconditionError: If f < 0 somewhere on the sample grid
    """
    check_positive(f, iv)
    geo = geometry(iv, x)

    length = iv.length
    integral = integrate(f, iv, tol).value
    average = integral / length
    fx = f(x)
    product = (x - iv.a) * (iv.b - x)

    lower = length**2 / (2.0 * geo.M**2) * (average - geo.M**2 * fx / product)
    upper = length**2 / (2.0 * geo.m**2) * (average - geo.m**2 * fx / product)
    middle = (f(iv.a) + f(iv.b)) / 2.0 - average
    delta = upper - lower

    closed_form = _gap_from(iv, geo, integral)
    if not math.isclose(delta, closed_form, rel_tol=DELTA_CROSS_CHECK, abs_tol=DELTA_CROSS_CHECK):
        logger.warning(f"Gap mismatch for '{f.label}' at x={x!r}: {delta!r} vs closed form {closed_form!r}")

    result = Envelope(
        lower=lower,
        middle=middle,
        upper=upper,
        geometry=geo,
        delta=delta,
        integral=integral,
        x_is_mvt=x_is_mvt,
    )
    if x_is_mvt and not result.sandwich_ok():
        logger.warning(f"Sandwich fails for '{f.label}' on {iv} at mean-value point x={x!r}")
    return result


def gap_delta(f: FunctionDef, iv: Interval, x: float, tol: float = DEFAULT_TOL) -> float:
    """Δ = (M^2 - m^2) / (2 m^2 M^2) · (b-a) · ∫f, the width of the envelope at x."""
    geo = geometry(iv, x)
    return _gap_from(iv, geo, integrate(f, iv, tol).value)


# ============================================================================
# ALTERNATE FORM AND PSI
# ============================================================================


@dataclass(frozen=True)
class PsiValue:
    value: float


def psi(f: FunctionDef, iv: Interval, x: float) -> PsiValue:
    """Ψ_f(a, b; x) = (b-a)^2 f(x) / (2 (x-a)(b-x)) + (f(a) + f(b)) / 2."""
    geometry(iv, x)
    weight = iv.length**2 / (2.0 * (x - iv.a) * (iv.b - x))
    return PsiValue(value=weight * f(x) + (f(iv.a) + f(iv.b)) / 2.0)


class AltFormBounds(NamedTuple):
    """Bounds on ∫f itself, equivalent to the envelope after rearrangement."""

    lower_int: float
    upper_int: float

    @property
    def width(self) -> float:
        return self.upper_int - self.lower_int

    def slack(self, integral: float) -> float:
        """∫f - lower_int, non-negative whenever the lower half holds."""
        return integral - self.lower_int

    def contains(self, integral: float, slack: float = INEQUALITY_SLACK) -> bool:
        return within(self.lower_int, integral, slack) and within(integral, self.upper_int, slack)


def _alt_coefficient(length: float, d: float) -> float:
    return 2.0 * d**2 * length / (2.0 * d**2 + length**2)


def alt_form_bounds(f: FunctionDef, iv: Interval, x: float) -> AltFormBounds:
    """
    Sandwich ∫f between 2m^2(b-a)/(2m^2+(b-a)^2)·Ψ and 2M^2(b-a)/(2M^2+(b-a)^2)·Ψ.

    Raises:
        PreconditionError: If f < 0 somewhere on the sample grid
    """
    check_positive(f, iv)
    geo = geometry(iv, x)
    value = psi(f, iv, x).value
    return AltFormBounds(
        lower_int=_alt_coefficient(iv.length, geo.m) * value,
        upper_int=_alt_coefficient(iv.length, geo.M) * value,
    )


# ============================================================================
# SIMPSON CLASS
# ============================================================================


@dataclass(frozen=True)
class SimpsonCheck:
    """
    Membership of f in the class whose mean-value point is the midpoint.

    For such f the three-point formula (b-a)/3 [2 f(mid) + (f(a)+f(b))/2]
    reproduces ∫f. In fact |∫f - formula| = (b-a)^2/6 · |F'(mid) - secant|,
    which `midpoint_residual` exposes.
    """

    in_class_F: bool
    simpson_value: float
    integral: float
    discrepancy: float
    midpoint_residual: float


def simpson_formula(f: FunctionDef, iv: Interval) -> float:
    return iv.length / 3.0 * (2.0 * f(iv.midpoint) + (f(iv.a) + f(iv.b)) / 2.0)


def simpson_exactness(
    f: FunctionDef,
    iv: Interval,
    tol: float = DEFAULT_CLASS_TOL,
    quad_tol: float = DEFAULT_TOL,
) -> SimpsonCheck:
    """
    Decide whether the midpoint solves F'(x) = secant within tol.

    Args:
        f: Non-negative integrand
        iv: Interval [a, b]
        tol: Membership tolerance, relative to 1 + |secant|
        quad_tol: Quadrature tolerance

    Returns:
        SimpsonCheck
    """
    check_positive(f, iv)
    secant = secant_slope(f, iv, quad_tol)
    residual = abs(F_prime(f, iv, iv.midpoint, quad_tol) - secant)
    in_class = residual <= tol * (1.0 + abs(secant))

    value = simpson_formula(f, iv)
    integral = integrate(f, iv, quad_tol).value
    discrepancy = abs(value - integral)

    if in_class and discrepancy > 10 * quad_tol:
        logger.warning(
            f"'{f.label}' classified as Simpson-exact on {iv} but discrepancy is {discrepancy:.3e}"
        )

    return SimpsonCheck(
        in_class_F=in_class,
        simpson_value=value,
        integral=integral,
        discrepancy=discrepancy,
        midpoint_residual=residual,
    )


# ============================================================================
# CLASSICAL COMPARATORS
# ============================================================================


def classical_trap_bound(f: FunctionDef, iv: Interval) -> float:
    """(b-a)^3 / 12 · sup |f''|."""
    return iv.length**3 / 12.0 * sup_abs_derivative(f, 2, iv)


def classical_simpson_bound(f: FunctionDef, iv: Interval) -> float:
    """(b-a)^5 / 90 · sup |f''''|, the Simpson error term with its customary printed constant."""
    return iv.length**5 / SIMPSON_BOUND_DIVISOR * sup_abs_derivative(f, 4, iv)


class HermiteHadamardCheck(NamedTuple):
    left: float
    mid: float
    right: float
    holds: bool


def hermite_hadamard_check(f: FunctionDef, iv: Interval, tol: float = DEFAULT_TOL) -> HermiteHadamardCheck:
    """
    f(mid) <= avg(f) <= (f(a) + f(b)) / 2, the normalised Hermite-Hadamard chain.

    Convexity is not verified; the caller asserts it.
    """
    left = f(iv.midpoint)
    mid = integrate(f, iv, tol).value / iv.length
    right = (f(iv.a) + f(iv.b)) / 2.0
    holds = left <= mid + HERMITE_HADAMARD_SLACK and mid <= right + HERMITE_HADAMARD_SLACK
    return HermiteHadamardCheck(left=left, mid=mid, right=right, holds=holds)


class IntermediateSandwich(NamedTuple):
    lower: float
    middle: float
    upper: float

    def holds(self, slack: float = INEQUALITY_SLACK) -> bool:
        return within(self.lower, self.middle, slack) and within(self.middle, self.upper, slack)


def intermediate_sandwich(
    f: FunctionDef,
    iv: Interval,
    x: float,
    tol: float = DEFAULT_TOL,
) -> IntermediateSandwich:
    """
    ∫f / M^2  <=  ∫_x^b f / (b-x)^2 + ∫_a^x f / (x-a)^2  <=  ∫f / m^2.

    Holds for every interior x when f >= 0.
    """
    check_positive(f, iv)
    geo = geometry(iv, x)
    total = integrate(f, iv, tol).value
    middle = (
        integrate(f, Interval(x, iv.b), tol).value / (iv.b - x) ** 2
        + integrate(f, Interval(iv.a, x), tol).value / (x - iv.a) ** 2
    )
    return IntermediateSandwich(lower=total / geo.M**2, middle=middle, upper=total / geo.m**2)


def intermediate_sandwich_check(f: FunctionDef, iv: Interval, x: float, tol: float = DEFAULT_TOL) -> bool:
    return intermediate_sandwich(f, iv, x, tol).holds()
