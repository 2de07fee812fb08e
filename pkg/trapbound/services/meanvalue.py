"""The auxiliary function F of the trapezoid bound and its mean-value point.

F(t) is the right-hand average of f over [t, b] minus the left-hand average over
[a, t]. Its endpoint values are the continuous extensions

    F(a) = avg(f) - f(a),    F(b) = f(b) - avg(f),

so the secant slope (F(b) - F(a)) / (b - a) equals
(f(a) + f(b) - 2 avg(f)) / (b - a). `solve_mvt` finds x in (a, b) with
F'(x) equal to that slope.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from trapbound.services.errors import ArgumentError, NoRootError, PreconditionError
from trapbound.services.expr import FunctionDef
from trapbound.services.quad import DEFAULT_TOL, Interval, integrate

logger = logging.getLogger(__name__)

DEFAULT_GRID_N = 1024
DEFAULT_SOLVER_TOL = 1e-10
POSITIVITY_SAMPLES = 1025
# Rounding allowance on g, relative to the magnitude of the terms of F' and
# to how far the interval sits from the origin compared to its length
ROUNDING_SLACK = 1e3 * float(np.finfo(float).eps)


@dataclass(frozen=True)
class MeanValuePoint:
    """
    A solution x of F'(x) = (F(b) - F(a)) / (b - a).

    Attributes:
        x: Canonical solution (root closest to the midpoint; midpoint if degenerate)
        residual: |F'(x) - secant|
        degenerate: True when F' equals the secant on the whole scan grid
        roots: Every root found, ascending
        bracket: Grid sign-change interval that produced x (None if degenerate
            or if x sits exactly on a grid node)
        secant: The secant slope of F
        grid_max_abs_g: max |F' - secant| over the scan grid
    """

    x: float
    residual: float
    degenerate: bool
    roots: tuple[float, ...]
    bracket: tuple[float, float] | None
    secant: float
    grid_max_abs_g: float


def _average(f: FunctionDef, iv: Interval, tol: float) -> float:
    return integrate(f, iv, tol).value / iv.length


def F(f: FunctionDef, iv: Interval, t: float, tol: float = DEFAULT_TOL) -> float:  # noqa: N802
    """
    Right-hand average minus left-hand average of f, split at t.

    Args:
        f: Integrand
        iv: Interval [a, b]
        t: Split point, a <= t <= b (endpoints use the continuous extension)
        tol: Quadrature tolerance

    Raises:
        ArgumentError: If t lies outside [a, b]
    """
    a, b = iv.a, iv.b
    if not iv.contains(t):
        raise ArgumentError(f"F needs a <= t <= b, got t={t!r} on {iv}", "a <= t <= b")

    if t == a:
        return _average(f, iv, tol) - f(a)
    if t == b:
        return f(b) - _average(f, iv, tol)

    right = integrate(f, Interval(t, b), tol).value / (b - t)
    left = integrate(f, Interval(a, t), tol).value / (t - a)
    return right - left


def F_prime(f: FunctionDef, iv: Interval, t: float, tol: float = DEFAULT_TOL) -> float:  # noqa: N802
    """
    F'(t) from its analytic form, not by differencing F:

        F'(t) = ∫_t^b f / (b-t)^2 + ∫_a^t f / (t-a)^2 - (b-a) f(t) / ((t-a)(b-t))

    Raises:
        ArgumentError: If t is not strictly inside (a, b)
    """
    if not iv.contains(t, open_=True):
        raise ArgumentError(f"F' needs a < t < b, got t={t!r} on {iv}", "a < t < b")
    return sum(_f_prime_terms(f, iv, t, tol))


def _f_prime_terms(f: FunctionDef, iv: Interval, t: float, tol: float) -> tuple[float, float, float]:
    # Each term grows like 1/(t - a) or 1/(b - t); their sum can be far smaller
    a, b = iv.a, iv.b
    right = integrate(f, Interval(t, b), tol).value / (b - t) ** 2
    left = integrate(f, Interval(a, t), tol).value / (t - a) ** 2
    kernel = -(b - a) * f(t) / ((t - a) * (b - t))
    return right, left, kernel


def secant_slope(f: FunctionDef, iv: Interval, tol: float = DEFAULT_TOL) -> float:
    """(F(b) - F(a)) / (b - a) = (f(a) + f(b) - 2 avg(f)) / (b - a)."""
    average = _average(f, iv, tol)
    return (f(iv.a) + f(iv.b) - 2.0 * average) / iv.length


def check_positive(f: FunctionDef, iv: Interval, samples: int = POSITIVITY_SAMPLES) -> None:
    """
    Enforce the non-negativity hypothesis by sampling f on a uniform grid.

    Raises:
        PreconditionError: At the first sample where f < 0
        ExprDomainError: If f cannot be evaluated at a sample
    """
    for s in np.linspace(iv.a, iv.b, samples):
        value = f(float(s))
        if value < 0:
            raise PreconditionError(
                f"'{f.label}' must be non-negative on {iv}, but f({float(s)!r}) = {value!r}",
                s=float(s),
                value=value,
            )


def solve_mvt(
    f: FunctionDef,
    iv: Interval,
    grid_n: int = DEFAULT_GRID_N,
    tol: float = DEFAULT_SOLVER_TOL,
    quad_tol: float = DEFAULT_TOL,
) -> MeanValuePoint:
    """
    Solve F'(x) = secant for x in (a, b).

    g(t) = F'(t) - secant is scanned on grid_n points of [a + h, b - h] with
    h = (b - a) / (4 grid_n). If |g| stays below tol (1 + |secant|) plus a
    rounding allowance proportional to the summed magnitude of the three terms
    of F' at every grid point, scaled by 1 + (|a| + |b|) / (b - a), the case
    is degenerate and the midpoint is returned. The allowance matters on short
    intervals, where those terms grow like 1 / h while their sum stays small. Otherwise every sign-change
    bracket is bisected to width tol (b - a) and the root closest to the
    midpoint (the smaller one on a tie) becomes x.

    Args:
        f: Non-negative integrand
        iv: Interval [a, b]
        grid_n: Number of scan points (>= 2)
        tol: Solver tolerance
        quad_tol: Tolerance handed to every quadrature call

    Returns:
        MeanValuePoint

    Raises:
        PreconditionError: If f < 0 at a positivity sample
        NoRootError: If the scan finds no sign change and the case is not degenerate
    """
    if grid_n < 2:
        raise ArgumentError(f"Scan grid needs at least 2 points, got {grid_n}", "grid_n >= 2")
    if not tol > 0:
        raise ArgumentError(f"Solver tolerance must be positive, got {tol}", "tol > 0")

    check_positive(f, iv)

    secant = secant_slope(f, iv, quad_tol)

    def g(t: float) -> float:
        return F_prime(f, iv, t, quad_tol) - secant

    h = iv.length / (4 * grid_n)
    grid = np.linspace(iv.a + h, iv.b - h, grid_n)
    terms = np.array([_f_prime_terms(f, iv, float(t), quad_tol) for t in grid])
    values = terms.sum(axis=1) - secant
    abs_values = np.abs(values)
    grid_max = float(abs_values.max())
    offset = 1.0 + (abs(iv.a) + abs(iv.b)) / iv.length
    threshold = tol * (1.0 + abs(secant)) + ROUNDING_SLACK * offset * np.abs(terms).sum(axis=1)

    logger.debug(
        f"MVT scan of '{f.label}' on {iv}: secant={secant!r}, grid_n={grid_n}, max|g|={grid_max:.3e}"
    )

    if bool(np.all(abs_values < threshold)):
        mid = iv.midpoint
        logger.info(f"Degenerate mean-value case for '{f.label}' on {iv}: F' is constant")
        return MeanValuePoint(
            x=mid,
            residual=abs(g(mid)),
            degenerate=True,
            roots=(mid,),
            bracket=None,
            secant=secant,
            grid_max_abs_g=grid_max,
        )

    found: list[tuple[float, tuple[float, float] | None]] = []
    xtol = tol * iv.length
    for i in range(grid_n):
        if values[i] == 0.0:
            found.append((float(grid[i]), None))
        elif i + 1 < grid_n and values[i] * values[i + 1] < 0:
            lo, hi = float(grid[i]), float(grid[i + 1])
            root = optimize.bisect(g, lo, hi, xtol=xtol)
            found.append((float(root), (lo, hi)))

    if not found:
        min_abs = float(abs_values.min())
        raise NoRootError(
            f"No sign change of F' - secant for '{f.label}' on {iv} "
            f"(grid min |g| = {min_abs:.3e}); the scan grid or quadrature is too coarse",
            min_abs_g=min_abs,
        )

    mid = iv.midpoint
    x, bracket = min(found, key=lambda item: (abs(item[0] - mid), item[0]))
    roots = tuple(sorted(root for root, _ in found))
    logger.debug(f"MVT roots for '{f.label}' on {iv}: {roots}; canonical x={x!r}")

    return MeanValuePoint(
        x=x,
        residual=abs(g(x)),
        degenerate=False,
        roots=roots,
        bracket=bracket,
        secant=secant,
        grid_max_abs_g=grid_max,
    )
