"""Bivariate means and the applications of the trapezoid bound to them.

Closed forms are evaluated through log1p/expm1 rearrangements, which are
algebraically equal to the textbook formulas but stay accurate when the two
arguments are close.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

from trapbound.services.bounds import INEQUALITY_SLACK, envelope, geometry, within
from trapbound.services.errors import ArgumentError, PreconditionError
from trapbound.services.expr import Binary, Constant, FunctionDef, Unary, Variable
from trapbound.services.meanvalue import DEFAULT_GRID_N, DEFAULT_SOLVER_TOL, solve_mvt
from trapbound.services.quad import DEFAULT_TOL, Interval

logger = logging.getLogger(__name__)

MeanKind = Literal["A", "G", "H", "M", "I", "L", "Lp"]
ApplicationKind = Literal["recip_sq", "recip", "log", "power"]

VALID_MEAN_KINDS: set[str] = {"A", "G", "H", "M", "I", "L", "Lp"}
VALID_APPLICATIONS: set[str] = {"recip_sq", "recip", "log", "power"}
PARAMETRIC_KINDS: set[str] = {"M", "Lp"}

CHAIN_SLACK = 1e-12
AXIOM_RTOL = 1e-10
MIDDLE_RTOL = 1e-8


@dataclass(frozen=True)
class MeanPair:
    """Two strictly positive arguments of a mean."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not (math.isfinite(value) and value > 0):
                raise ArgumentError(f"{name} must be a positive finite number, got {value!r}", f"{name} > 0")

    @property
    def equal(self) -> bool:
        return self.alpha == self.beta

    def swapped(self) -> "MeanPair":
        return MeanPair(self.beta, self.alpha)

    def scaled(self, factor: float) -> "MeanPair":
        return MeanPair(self.alpha * factor, self.beta * factor)


def _log_ratio(pair: MeanPair) -> float:
    """ln(beta / alpha) without cancellation for beta close to alpha."""
    return math.log1p((pair.beta - pair.alpha) / pair.alpha)


def _arithmetic(pair: MeanPair) -> float:
    return (pair.alpha + pair.beta) / 2


def _geometric(pair: MeanPair) -> float:
    return math.sqrt(pair.alpha) * math.sqrt(pair.beta)


def _harmonic(pair: MeanPair) -> float:
    return 2 * pair.alpha * pair.beta / (pair.alpha + pair.beta)


def _power(pair: MeanPair, r: float) -> float:
    if r == 0:
        raise ArgumentError("Power mean needs r != 0", "r != 0")
    if pair.equal:
        return pair.alpha
    return ((pair.alpha**r + pair.beta**r) / 2) ** (1 / r)


def _identric(pair: MeanPair) -> float:
    if pair.equal:
        return pair.alpha
    # ln I = ln alpha + beta ln(beta/alpha) / (beta - alpha) - 1
    return pair.alpha * math.exp(pair.beta * _log_ratio(pair) / (pair.beta - pair.alpha) - 1)


def _logarithmic(pair: MeanPair) -> float:
    if pair.equal:
        return pair.alpha
    return (pair.beta - pair.alpha) / _log_ratio(pair)


def _generalized_log(pair: MeanPair, p: float) -> float:
    if p in (-1, 0):
        raise ArgumentError(f"Generalized logarithmic mean needs p not in {{-1, 0}}, got {p}", "p not in {-1, 0}")
    if pair.equal:
        return pair.alpha
    q = p + 1
    # beta^q - alpha^q = alpha^q expm1(q ln(beta/alpha))
    numerator = pair.alpha**q * math.expm1(q * _log_ratio(pair))
    inner = numerator / (q * (pair.beta - pair.alpha))
    return inner ** (1 / p)


def mean(kind: MeanKind, pair: MeanPair, order: float | None = None) -> float:
    """
    Evaluate a mean of the catalogue.

    Args:
        kind: A, G, H, M (power mean, order r), I, L or Lp (order p)
        pair: The two arguments
        order: r for M, p for Lp; ignored otherwise

    Returns:
        The mean value; equal arguments return their common value

    Raises:
        ArgumentError: Unknown kind, missing order, r = 0 or p in {-1, 0}
    """
    if kind not in VALID_MEAN_KINDS:
        raise ArgumentError(
            f"Unknown mean kind: {kind}. Valid kinds: {', '.join(sorted(VALID_MEAN_KINDS))}",
            "kind",
        )
    if kind in PARAMETRIC_KINDS and order is None:
        raise ArgumentError(f"Mean {kind} needs an order parameter", "order required")

    if kind == "A":
        return _arithmetic(pair)
    if kind == "G":
        return _geometric(pair)
    if kind == "H":
        return _harmonic(pair)
    if kind == "M":
        return _power(pair, order)  # type: ignore[arg-type]
    if kind == "I":
        return _identric(pair)
    if kind == "L":
        return _logarithmic(pair)
    return _generalized_log(pair, order)  # type: ignore[arg-type]


def mean_chain(pair: MeanPair) -> dict[str, float]:
    """H, G, L, I, A in chain order."""
    return {kind: mean(kind, pair) for kind in ("H", "G", "L", "I", "A")}  # type: ignore[misc]


def mean_chain_check(pair: MeanPair) -> bool:
    """True iff H <= G <= L <= I <= A."""
    values = list(mean_chain(pair).values())
    return all(within(lo, hi, CHAIN_SLACK) for lo, hi in zip(values, values[1:]))


# ============================================================================
# AXIOMS
# ============================================================================


@dataclass
class AxiomReport:
    kind: str
    order: float | None
    homogeneity: bool = True
    symmetry: bool = True
    reflexivity: bool = True
    monotonicity: bool = True
    internality: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.homogeneity and self.symmetry and self.reflexivity and self.monotonicity and self.internality


def _close(x: float, y: float) -> bool:
    return math.isclose(x, y, rel_tol=AXIOM_RTOL, abs_tol=AXIOM_RTOL)


def _not_above(x: float, y: float) -> bool:
    return x <= y * (1 + AXIOM_RTOL) + AXIOM_RTOL


def mean_axioms_check(
    kind: MeanKind,
    samples: Sequence[MeanPair],
    order: float | None = None,
    scales: Sequence[float] = (0.5, 3.0),
) -> AxiomReport:
    """
    Verify homogeneity, symmetry, reflexivity, monotonicity and internality on samples.

    Monotonicity is checked over every pair of samples that is ordered
    componentwise. Each comparison uses relative tolerance 1e-10.
    """
    report = AxiomReport(kind=kind, order=order)

    def value(pair: MeanPair) -> float:
        return mean(kind, pair, order)

    values = [value(pair) for pair in samples]

    for pair, v in zip(samples, values):
        for factor in scales:
            scaled = value(pair.scaled(factor))
            if not _close(scaled, factor * v):
                report.homogeneity = False
                report.failures.append(f"homogeneity: {kind}({pair.alpha}·{factor}, {pair.beta}·{factor}) = {scaled} != {factor * v}")

        mirrored = value(pair.swapped())
        if not _close(mirrored, v):
            report.symmetry = False
            report.failures.append(f"symmetry: {kind}({pair.alpha}, {pair.beta}) = {v} != {mirrored}")

        for component in (pair.alpha, pair.beta):
            reflexive = value(MeanPair(component, component))
            if not _close(reflexive, component):
                report.reflexivity = False
                report.failures.append(f"reflexivity: {kind}({component}, {component}) = {reflexive}")

        lo, hi = min(pair.alpha, pair.beta), max(pair.alpha, pair.beta)
        if not (_not_above(lo, v) and _not_above(v, hi)):
            report.internality = False
            report.failures.append(f"internality: {kind}({pair.alpha}, {pair.beta}) = {v} outside [{lo}, {hi}]")

    for first, v1 in zip(samples, values):
        for second, v2 in zip(samples, values):
            if first.alpha <= second.alpha and first.beta <= second.beta and not _not_above(v1, v2):
                report.monotonicity = False
                report.failures.append(
                    f"monotonicity: {kind}({first.alpha}, {first.beta}) = {v1} > "
                    f"{kind}({second.alpha}, {second.beta}) = {v2}"
                )

    if not report.ok:
        logger.warning(f"Mean {kind} failed {len(report.failures)} axiom checks")
    return report


# ============================================================================
# APPLICATIONS
# ============================================================================


def _check_application(which: str, iv: Interval, p: float | None) -> None:
    if which not in VALID_APPLICATIONS:
        raise ArgumentError(
            f"Unknown application: {which}. Valid: {', '.join(sorted(VALID_APPLICATIONS))}",
            "which",
        )
    if iv.a <= 0:
        raise ArgumentError(f"Applications need 0 < a, got {iv}", "a > 0")
    if which == "log" and iv.a < 1:
        raise PreconditionError(f"ln(s) is negative below 1; the log application needs a >= 1, got {iv}", s=iv.a)
    if which == "power" and (p is None or p in (-1, 0)):
        raise ArgumentError(f"The power application needs p not in {{-1, 0}}, got {p}", "p not in {-1, 0}")


def application_function(which: ApplicationKind, p: float | None = None) -> FunctionDef:
    """The integrand of an application: 1/s^2, 1/s, ln(s) or s^p."""
    s = Variable()
    if which == "recip_sq":
        return FunctionDef(Binary("/", Constant(1.0), Binary("^", s, Constant(2.0))), name="recip_sq")
    if which == "recip":
        return FunctionDef(Binary("/", Constant(1.0), s), name="recip")
    if which == "log":
        return FunctionDef(Unary("ln", s), name="log")
    if p is None:
        raise ArgumentError("The power application needs p", "p required")
    return FunctionDef(Binary("^", s, Constant(float(p))), name=f"power({p:g})")


def application_F(which: ApplicationKind, iv: Interval, t: float, p: float | None = None) -> float:  # noqa: N802
    """
    Closed-form F(t) of an application, for t strictly inside (a, b).

    For 1/s^2 this is -(b-a)/(a b t); the often-quoted (b-a)/(ab t^2) does not
    match direct integration, although both lead to the same mean-value point
    sqrt(ab).
    """
    _check_application(which, iv, p)
    a, b = iv.a, iv.b
    if not iv.contains(t, open_=True):
        raise ArgumentError(f"t must lie strictly inside {iv}, got {t!r}", "a < t < b")

    if which == "recip_sq":
        return -(b - a) / (a * b * t)
    if which == "recip":
        return math.log(b / t) / (b - t) - math.log(t / a) / (t - a)
    if which == "log":
        return math.log(mean("I", MeanPair(t, b))) - math.log(mean("I", MeanPair(a, t)))
    return mean("Lp", MeanPair(t, b), p) ** p - mean("Lp", MeanPair(a, t), p) ** p


def application_middle(which: ApplicationKind, iv: Interval, p: float | None = None) -> float:
    """The middle member written with means (recip_sq is scaled by G^2)."""
    _check_application(which, iv, p)
    pair = MeanPair(iv.a, iv.b)

    if which == "recip_sq":
        g = mean("G", pair)
        return g**2 / mean("H", MeanPair(iv.a**2, iv.b**2)) - 1
    if which == "recip":
        return 1 / mean("H", pair) - 1 / mean("L", pair)
    if which == "log":
        return math.log(mean("G", pair)) - math.log(mean("I", pair))
    return mean("M", pair, p) ** p - mean("Lp", pair, p) ** p


def _application_average(which: ApplicationKind, pair: MeanPair, p: float | None) -> float:
    """(1/(b-a)) ∫f written with means; recip_sq is scaled by G^2."""
    if which == "recip_sq":
        return 1.0
    if which == "recip":
        return 1 / mean("L", pair)
    if which == "log":
        return math.log(mean("I", pair))
    return mean("Lp", pair, p) ** p


@dataclass(frozen=True)
class ApplicationReport:
    which: str
    interval: Interval
    p: float | None
    x: float
    x_closed_form: float | None
    lower: float
    middle_quadrature: float
    middle_mean_form: float
    upper: float
    middle_ok: bool
    sandwich_ok: bool

    @property
    def x_ok(self) -> bool:
        if self.x_closed_form is None:
            return True
        return math.isclose(self.x, self.x_closed_form, rel_tol=MIDDLE_RTOL, abs_tol=MIDDLE_RTOL)

    @property
    def ok(self) -> bool:
        return self.middle_ok and self.sandwich_ok and self.x_ok


def application_check(
    which: ApplicationKind,
    iv: Interval,
    p: float | None = None,
    grid_n: int = DEFAULT_GRID_N,
    tol: float = DEFAULT_SOLVER_TOL,
    quad_tol: float = DEFAULT_TOL,
) -> ApplicationReport:
    """
    Run one application end to end.

    Solves for the mean-value point, evaluates the bound sides in their mean
    form, and checks that the mean-form middle agrees with the quadrature
    middle and lies between the sides.

    Args:
        which: recip_sq, recip, log or power
        iv: Interval with 0 < a (and 1 <= a for log)
        p: Exponent for power
        grid_n: Scan grid for the mean-value solver
        tol: Solver tolerance
        quad_tol: Quadrature tolerance

    Returns:
        ApplicationReport
    """
    _check_application(which, iv, p)
    f = application_function(which, p)
    pair = MeanPair(iv.a, iv.b)

    point = solve_mvt(f, iv, grid_n=grid_n, tol=tol, quad_tol=quad_tol)
    x = point.x
    env = envelope(f, iv, x, x_is_mvt=True, tol=quad_tol)
    geo = geometry(iv, x)

    scale = mean("G", pair) ** 2 if which == "recip_sq" else 1.0
    average = _application_average(which, pair, p)
    fx = scale * f(x)
    product = (x - iv.a) * (iv.b - x)
    length = iv.length

    lower = length**2 / (2 * geo.M**2) * (average - geo.M**2 * fx / product)
    upper = length**2 / (2 * geo.m**2) * (average - geo.m**2 * fx / product)
    middle_mean_form = application_middle(which, iv, p)
    middle_quadrature = scale * env.middle

    middle_ok = math.isclose(middle_mean_form, middle_quadrature, rel_tol=MIDDLE_RTOL, abs_tol=MIDDLE_RTOL)
    sandwich_ok = within(lower, middle_mean_form, INEQUALITY_SLACK) and within(middle_mean_form, upper, INEQUALITY_SLACK)

    report = ApplicationReport(
        which=which,
        interval=iv,
        p=p,
        x=x,
        x_closed_form=mean("G", pair) if which == "recip_sq" else None,
        lower=lower,
        middle_quadrature=middle_quadrature,
        middle_mean_form=middle_mean_form,
        upper=upper,
        middle_ok=middle_ok,
        sandwich_ok=sandwich_ok,
    )
    if not report.ok:
        logger.warning(f"Application {which} on {iv} failed: {report}")
    return report
