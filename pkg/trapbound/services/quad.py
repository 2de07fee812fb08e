"""Reference quadrature and the classical composite rules.

`integrate` is the oracle behind every integral of the bound computations:
adaptive Simpson with a Richardson-corrected local error estimate.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as sp_integrate
from scipy import optimize

from trapbound.services.errors import ArgumentError, ConvergenceError
from trapbound.services.expr import FunctionDef

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
MAX_DEPTH = 50
ROUNDING_FLOOR = 64 * np.finfo(float).eps
SUP_GRID_POINTS = 4097


@dataclass(frozen=True)
class Interval:
    """The integration domain [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ArgumentError(f"Interval endpoints must be finite, got [{self.a}, {self.b}]", "finite")
        if not self.a < self.b:
            raise ArgumentError(f"Interval needs a < b, got [{self.a}, {self.b}]", "a < b")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return (self.a + self.b) / 2

    def contains(self, x: float, open_: bool = False) -> bool:
        if open_:
            return self.a < x < self.b
        return self.a <= x <= self.b

    def __str__(self) -> str:
        return f"[{self.a:g}, {self.b:g}]"


@dataclass(frozen=True)
class QuadResult:
    """Integral value with its error estimate and integrand evaluation count."""

    value: float
    err_estimate: float
    evals: int


# ============================================================================
# ADAPTIVE SIMPSON ORACLE
# ============================================================================


def integrate(f: FunctionDef, iv: Interval, tol: float = DEFAULT_TOL) -> QuadResult:
    """
    Adaptive Simpson integration of f over iv.

    Each panel is split until its Richardson error estimate |S2 - S1| / 15 is
    within tol scaled by the panel's share of the interval, so the total
    estimate stays within tol.

    Args:
        f: Integrand
        iv: Integration interval
        tol: Absolute error tolerance (> 0)

    Returns:
        QuadResult with value, error estimate and evaluation count

    Raises:
        ArgumentError: If tol is not positive
        ConvergenceError: If a panel needs more than MAX_DEPTH halvings
        ExprDomainError: Propagated from f
    """
    if not tol > 0:
        raise ArgumentError(f"Quadrature tolerance must be positive, got {tol}", "tol > 0")

    evals = 0
    accepted = 0.0

    def eval_f(s: float) -> float:
        nonlocal evals
        evals += 1
        return f(s)

    def simpson(fa: float, fm: float, fb: float, width: float) -> float:
        return width / 6.0 * (fa + 4.0 * fm + fb)

    def adaptive(
        a: float,
        b: float,
        fa: float,
        fm: float,
        fb: float,
        whole: float,
        local_tol: float,
        depth: int,
        pending: float,
    ) -> tuple[float, float]:
        nonlocal accepted
        m = (a + b) / 2.0
        flm = eval_f((a + m) / 2.0)
        frm = eval_f((m + b) / 2.0)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        correction = (left + right - whole) / 15.0

        # Below the rounding floor of the panel sum further halving cannot help
        if abs(correction) <= max(local_tol, ROUNDING_FLOOR * abs(left + right)):
            accepted += left + right + correction
            return left + right + correction, abs(correction)

        if depth >= MAX_DEPTH:
            # Accepted panels plus this one plus the coarse estimates still queued
            raise _DepthExceeded(accepted + left + right + correction + pending)

        left_value, left_err = adaptive(a, m, fa, flm, fm, left, local_tol / 2.0, depth + 1, pending + right)
        right_value, right_err = adaptive(m, b, fm, frm, fb, right, local_tol / 2.0, depth + 1, pending)
        return left_value + right_value, left_err + right_err

    a, b = iv.a, iv.b
    fa = eval_f(a)
    fm = eval_f(iv.midpoint)
    fb = eval_f(b)
    whole = simpson(fa, fm, fb, iv.length)

    try:
        value, err = adaptive(a, b, fa, fm, fb, whole, tol, 0, 0.0)
    except _DepthExceeded as exc:
        logger.warning(f"Quadrature of '{f.label}' on {iv} exceeded depth {MAX_DEPTH}")
        raise ConvergenceError(
            f"Adaptive Simpson did not converge on {iv} within depth {MAX_DEPTH} "
            f"(best estimate {exc.partial!r})",
            best_estimate=exc.partial,
            evals=evals,
        ) from None

    logger.debug(f"integrate '{f.label}' on {iv}: value={value!r} err={err:.3e} evals={evals}")
    return QuadResult(value=value, err_estimate=err, evals=evals)


class _DepthExceeded(Exception):
    def __init__(self, partial: float):
        self.partial = partial
        super().__init__(partial)


# ============================================================================
# COMPOSITE RULES
# ============================================================================


def _sample(f: FunctionDef, iv: Interval, points: int) -> tuple[np.ndarray, np.ndarray]:
    nodes = np.linspace(iv.a, iv.b, points)
    values = np.fromiter((f(float(s)) for s in nodes), dtype=float, count=points)
    return nodes, values


def composite_trapezoid(f: FunctionDef, iv: Interval, n: int = 1) -> float:
    """Composite trapezoid rule with n panels; n=1 is (b-a)(f(a)+f(b))/2."""
    if n < 1:
        raise ArgumentError(f"Panel count must be >= 1, got {n}", "n >= 1")
    nodes, values = _sample(f, iv, n + 1)
    return float(sp_integrate.trapezoid(values, nodes))


def composite_simpson(f: FunctionDef, iv: Interval, n: int = 2) -> float:
    """Composite Simpson rule with an even number n of panels."""
    if n < 2 or n % 2:
        raise ArgumentError(f"Simpson panel count must be even and >= 2, got {n}", "n even, n >= 2")
    nodes, values = _sample(f, iv, n + 1)
    return float(sp_integrate.simpson(values, x=nodes))


# ============================================================================
# SUP-NORM OF DERIVATIVES
# ============================================================================


def sup_abs_derivative(f: FunctionDef, order: int, iv: Interval) -> float:
    """
    Estimate sup |f^(order)| on iv.

    The symbolic derivative is sampled on a fixed 4097-point grid and the grid
    argmax is refined by golden-section search between its neighbours. This is
    an estimate, not an enclosure: a narrow spike between grid points can be
    missed.

    Args:
        f: Function to differentiate symbolically
        order: Derivative order (>= 1; the bounds use 2 and 4)
        iv: Interval to search

    Returns:
        A value >= the grid maximum of |f^(order)|

    Raises:
        DifferentiationError: If f contains a non-differentiable node
    """
    if order < 1:
        raise ArgumentError(f"Derivative order must be >= 1, got {order}", "order >= 1")

    derivative = f.derivative(order)
    nodes, values = _sample(derivative, iv, SUP_GRID_POINTS)
    magnitudes = np.abs(values)
    i = int(np.argmax(magnitudes))
    best = float(magnitudes[i])

    if 0 < i < SUP_GRID_POINTS - 1:
        def negated(s: float) -> float:
            return -abs(derivative(min(max(s, iv.a), iv.b)))

        bracket = (float(nodes[i - 1]), float(nodes[i]), float(nodes[i + 1]))
        try:
            s_star = optimize.golden(negated, brack=bracket, tol=1e-10)
            best = max(best, -negated(float(s_star)))
        except ValueError:
            # Flat neighbourhood: the bracket is not strict, keep the grid value
            pass

    logger.debug(f"sup |f^({order})| of '{f.label}' on {iv} ~ {best!r} (grid index {i})")
    return best
