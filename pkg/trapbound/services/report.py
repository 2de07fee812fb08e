"""The full bounds pipeline for one (function, interval) and its report record."""

import logging
import math
import time
from dataclasses import dataclass, fields
from typing import Any, Callable

from trapbound.services.bounds import (
    alt_form_bounds,
    classical_simpson_bound,
    classical_trap_bound,
    envelope,
    gap_delta,
    intermediate_sandwich_check,
    psi,
    simpson_exactness,
)
from trapbound.services.errors import DifferentiationError, ExprDomainError
from trapbound.services.expr import FunctionDef
from trapbound.services.meanvalue import DEFAULT_GRID_N, DEFAULT_SOLVER_TOL, F_prime, check_positive, secant_slope, solve_mvt
from trapbound.services.quad import DEFAULT_TOL, Interval

logger = logging.getLogger(__name__)

DELTA_IDENTITY_RTOL = 1e-9


@dataclass(frozen=True)
class Report:
    """Everything computed for one integrand on one interval."""

    name: str
    function: str
    a: float
    b: float
    x: float
    residual: float
    degenerate: bool
    roots: tuple[float, ...]
    x_is_mvt: bool
    M: float
    m: float
    lower: float
    middle: float
    upper: float
    delta: float
    lower_int: float
    upper_int: float
    integral: float
    psi: float
    classical_trap_bound: float | None
    classical_simpson_bound: float | None
    in_class_F: bool
    simpson_value: float
    discrepancy: float
    sandwich_ok: bool
    intermediate_ok: bool
    delta_identity_ok: bool
    tol: float
    solver_tol: float
    grid_n: int
    timing_s: float

    def violations(self) -> list[str]:
        """Names of the inequalities that must hold here but do not."""
        failed = []
        if self.x_is_mvt and not self.sandwich_ok:
            failed.append("sandwich")
        if not self.intermediate_ok:
            failed.append("intermediate")
        if not self.delta_identity_ok:
            failed.append("delta_identity")
        return failed

    def to_dict(self) -> dict[str, Any]:
        """Nested dict following the stable JSON schema."""
        return {
            "name": self.name,
            "function": self.function,
            "interval": {"a": self.a, "b": self.b},
            "mvt": {
                "x": self.x,
                "residual": self.residual,
                "degenerate": self.degenerate,
                "roots": list(self.roots),
                "x_is_mvt": self.x_is_mvt,
            },
            "geometry": {"M": self.M, "m": self.m},
            "envelope": {"lower": self.lower, "middle": self.middle, "upper": self.upper, "delta": self.delta},
            "alt_form": {"lower_int": self.lower_int, "upper_int": self.upper_int, "integral": self.integral},
            "psi": self.psi,
            "classical_trap_bound": self.classical_trap_bound,
            "classical_simpson_bound": self.classical_simpson_bound,
            "simpson": {"in_class_F": self.in_class_F, "value": self.simpson_value, "discrepancy": self.discrepancy},
            "checks": {
                "sandwich_ok": self.sandwich_ok,
                "eq24_ok": self.intermediate_ok,
                "delta_identity_ok": self.delta_identity_ok,
            },
            "oracle": {"tol": self.tol, "solver_tol": self.solver_tol, "grid_n": self.grid_n},
            "timing_s": self.timing_s,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        """Inverse of to_dict."""
        flat = {
            "name": data["name"],
            "function": data["function"],
            **data["interval"],
            **data["mvt"],
            **data["geometry"],
            **data["envelope"],
            **data["alt_form"],
            "psi": data["psi"],
            "classical_trap_bound": data["classical_trap_bound"],
            "classical_simpson_bound": data["classical_simpson_bound"],
            "in_class_F": data["simpson"]["in_class_F"],
            "simpson_value": data["simpson"]["value"],
            "discrepancy": data["simpson"]["discrepancy"],
            "sandwich_ok": data["checks"]["sandwich_ok"],
            "intermediate_ok": data["checks"]["eq24_ok"],
            "delta_identity_ok": data["checks"]["delta_identity_ok"],
            **data["oracle"],
            "timing_s": data["timing_s"],
        }
        flat["roots"] = tuple(flat["roots"])
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in flat.items() if key in known})


def _optional_bound(kind: str, compute: Callable[[FunctionDef, Interval], float], f: FunctionDef, iv: Interval) -> float | None:
    try:
        return compute(f, iv)
    except (DifferentiationError, ExprDomainError) as e:
        logger.warning(f"Classical {kind} bound unavailable for '{f.label}' on {iv}: {e.message}")
        return None


def build_report(
    f: FunctionDef,
    iv: Interval,
    x: float | None = None,
    tol: float = DEFAULT_TOL,
    solver_tol: float = DEFAULT_SOLVER_TOL,
    grid_n: int = DEFAULT_GRID_N,
) -> Report:
    """
    Run the whole pipeline: mean-value point, envelope, gap, alternate form,
    Ψ, classical bounds, Simpson class and the consistency checks.

    Args:
        f: Non-negative integrand
        iv: Interval [a, b]
        x: Interior point to use; None solves for the mean-value point
        tol: Quadrature tolerance
        solver_tol: Mean-value solver tolerance
        grid_n: Scan grid size

    Returns:
        Report
    """
    started = time.perf_counter()
    check_positive(f, iv)

    if x is None:
        point = solve_mvt(f, iv, grid_n=grid_n, tol=solver_tol, quad_tol=tol)
        x_used, residual, degenerate, roots, x_is_mvt = point.x, point.residual, point.degenerate, point.roots, True
    else:
        residual = abs(F_prime(f, iv, x, tol) - secant_slope(f, iv, tol))
        x_used, degenerate, roots, x_is_mvt = x, False, (), False

    env = envelope(f, iv, x_used, x_is_mvt=x_is_mvt, tol=tol)
    alt = alt_form_bounds(f, iv, x_used)
    delta_closed = gap_delta(f, iv, x_used, tol)
    simpson = simpson_exactness(f, iv, quad_tol=tol)

    report = Report(
        name=f.label,
        function=f.text,
        a=iv.a,
        b=iv.b,
        x=x_used,
        residual=residual,
        degenerate=degenerate,
        roots=tuple(roots),
        x_is_mvt=x_is_mvt,
        M=env.geometry.M,
        m=env.geometry.m,
        lower=env.lower,
        middle=env.middle,
        upper=env.upper,
        delta=env.delta,
        lower_int=alt.lower_int,
        upper_int=alt.upper_int,
        integral=env.integral,
        psi=psi(f, iv, x_used).value,
        classical_trap_bound=_optional_bound("trapezoid", classical_trap_bound, f, iv),
        classical_simpson_bound=_optional_bound("Simpson", classical_simpson_bound, f, iv),
        in_class_F=simpson.in_class_F,
        simpson_value=simpson.simpson_value,
        discrepancy=simpson.discrepancy,
        sandwich_ok=env.sandwich_ok(),
        intermediate_ok=intermediate_sandwich_check(f, iv, x_used, tol),
        delta_identity_ok=math.isclose(
            delta_closed, env.delta, rel_tol=DELTA_IDENTITY_RTOL, abs_tol=DELTA_IDENTITY_RTOL
        ),
        tol=tol,
        solver_tol=solver_tol,
        grid_n=grid_n,
        timing_s=time.perf_counter() - started,
    )
    logger.info(
        f"Report for '{report.name}' on {iv}: x={report.x!r} lower={report.lower!r} "
        f"middle={report.middle!r} upper={report.upper!r}"
    )
    return report
