"""Human-readable tables for the terminal (6 significant digits)."""

from trapbound.services.meanvalue import MeanValuePoint
from trapbound.services.means import ApplicationReport, AxiomReport, MeanPair
from trapbound.services.quad import Interval
from trapbound.services.report import Report


def num(value: float | None) -> str:
    """Format a number for tables."""
    if value is None:
        return "n/a"
    return f"{value:.6g}"


def verdict(ok: bool) -> str:
    return "ok" if ok else "FAILED"


def format_report(report: Report) -> str:
    """Format a bounds report as an indented tree."""
    roots = ", ".join(num(r) for r in report.roots) or "-"
    x_source = "mean-value point" if report.x_is_mvt else "user supplied"
    if report.degenerate:
        x_source += ", degenerate"

    return "\n".join(
        [
            f"{report.name}: f(s) = {report.function} on [{num(report.a)}, {num(report.b)}]",
            f"├ x: {num(report.x)} ({x_source}), residual {num(report.residual)}",
            f"├ roots: {roots}",
            f"├ M: {num(report.M)}   m: {num(report.m)}",
            f"├ envelope: {num(report.lower)} <= {num(report.middle)} <= {num(report.upper)}",
            f"├ delta: {num(report.delta)}",
            f"├ integral: {num(report.lower_int)} <= {num(report.integral)} <= {num(report.upper_int)}",
            f"├ psi: {num(report.psi)}",
            f"├ classical trapezoid bound: {num(report.classical_trap_bound)}",
            f"├ classical Simpson bound: {num(report.classical_simpson_bound)}",
            f"├ Simpson class: {'yes' if report.in_class_F else 'no'} "
            f"(formula {num(report.simpson_value)}, discrepancy {num(report.discrepancy)})",
            f"└ checks: sandwich {verdict(report.sandwich_ok)}, intermediate {verdict(report.intermediate_ok)}, "
            f"delta identity {verdict(report.delta_identity_ok)}",
        ]
    )


def format_meanpoint(point: MeanValuePoint, name: str, iv: Interval, all_roots: bool = False) -> str:
    lines = [
        f"{name} on [{num(iv.a)}, {num(iv.b)}]",
        f"├ x: {num(point.x)}{' (degenerate: every point solves)' if point.degenerate else ''}",
        f"├ residual: {num(point.residual)}",
        f"├ secant: {num(point.secant)}",
    ]
    if point.bracket is not None:
        lines.append(f"├ bracket: [{num(point.bracket[0])}, {num(point.bracket[1])}]")
    if all_roots:
        lines.append(f"├ roots ({len(point.roots)}): {', '.join(num(r) for r in point.roots)}")
    lines.append(f"└ max |g| on grid: {num(point.grid_max_abs_g)}")
    return "\n".join(lines)


def format_mean_table(pair: MeanPair, values: dict[str, float], chain_ok: bool) -> str:
    lines = [f"Means of ({num(pair.alpha)}, {num(pair.beta)})"]
    for label, value in values.items():
        lines.append(f"├ {label:<4} {num(value)}")
    lines.append(f"└ H <= G <= L <= I <= A: {verdict(chain_ok)}")
    return "\n".join(lines)


def format_application(report: ApplicationReport) -> str:
    iv = report.interval
    title = report.which if report.p is None else f"{report.which} (p = {num(report.p)})"
    lines = [
        f"Application {title} on [{num(iv.a)}, {num(iv.b)}]",
        f"├ x: {num(report.x)}",
    ]
    if report.x_closed_form is not None:
        lines.append(f"├ closed-form x: {num(report.x_closed_form)} ({verdict(report.x_ok)})")
    lines.extend(
        [
            f"├ bounds: {num(report.lower)} <= {num(report.middle_mean_form)} <= {num(report.upper)}",
            f"├ middle (quadrature): {num(report.middle_quadrature)} ({verdict(report.middle_ok)})",
            f"└ sandwich: {verdict(report.sandwich_ok)}",
        ]
    )
    return "\n".join(lines)


def format_axioms(report: AxiomReport) -> str:
    name = report.kind if report.order is None else f"{report.kind}({num(report.order)})"
    lines = [f"Axioms for {name}"]
    for axiom in ("homogeneity", "symmetry", "reflexivity", "monotonicity", "internality"):
        lines.append(f"├ {axiom}: {verdict(getattr(report, axiom))}")
    lines.append(f"└ failures: {len(report.failures)}")
    return "\n".join(lines)
