"""
Command handlers for the trapbound CLI.

Every command reads its defaults from the configuration dict in `ctx.obj`
(see trapbound.config) and lets ErrorMiddleware map domain errors to exit codes:
0 success, 1 usage or input error, 2 a guaranteed inequality failed.
"""

import json
import logging
from pathlib import Path

import click

from trapbound.config import get_config
from trapbound.formatters import (
    MEANPOINT_CSV_COLUMNS,
    format_application,
    format_axioms,
    format_mean_table,
    format_meanpoint,
    format_report,
    meanpoint_csv_row,
    meanpoint_to_dict,
    report_csv_row,
    report_to_json,
    write_csv,
)
from trapbound.middlewares import ErrorMiddleware, UsageExitGroup
from trapbound.services.corpus import load_corpus
from trapbound.services.errors import ArgumentError, InequalityViolation, TrapboundError
from trapbound.services.expr import FunctionDef
from trapbound.services.meanvalue import solve_mvt
from trapbound.services.means import (
    VALID_APPLICATIONS,
    VALID_MEAN_KINDS,
    MeanPair,
    application_check,
    mean,
    mean_axioms_check,
    mean_chain_check,
)
from trapbound.services.quad import Interval
from trapbound.services.report import build_report
from trapbound.services.sweep import sweep as run_sweep

logger = logging.getLogger(__name__)
guarded = ErrorMiddleware()


def parse_x(value: str, iv: Interval) -> float | None:
    """Parse --x: "auto" solves for the mean-value point, a number must lie inside (a, b)."""
    if value.strip().lower() == "auto":
        return None
    try:
        x = float(value)
    except ValueError:
        raise ArgumentError(f"--x must be 'auto' or a number, got {value!r}", "x") from None
    if not iv.contains(x, open_=True):
        raise ArgumentError(f"--x must lie strictly inside {iv}, got {x!r}", "a < x < b")
    return x


def setting(ctx: click.Context, value: float | int | None, key: str) -> float | int:
    """A flag value, falling back to the configuration."""
    return ctx.obj[key] if value is None else value


@click.group(cls=UsageExitGroup)
@click.pass_context
def cli(ctx: click.Context) -> None:
    """
    Two-sided trapezoid error bounds for non-negative integrands.

    Examples:

        trapbound bounds --fn "1/s^2" --a 1 --b 2

        trapbound meanpoint --fn "exp(s)" --a 0 --b 1 --all-roots

        trapbound means --alpha 1 --beta 2

        trapbound sweep --corpus paper --jobs 4
    """
    if ctx.obj is None:
        ctx.obj = get_config()


@cli.command()
@click.option("--fn", "fn", required=True, help="Integrand in s, e.g. '1/s^2'")
@click.option("--a", "a", type=float, required=True, help="Left endpoint")
@click.option("--b", "b", type=float, required=True, help="Right endpoint")
@click.option("--x", "x", default="auto", show_default=True, help="Interior point, or 'auto' for the mean-value point")
@click.option("--tol", type=float, default=None, help="Quadrature tolerance")
@click.option("--solver-tol", type=float, default=None, help="Mean-value solver tolerance")
@click.option("--grid", "grid_n", type=int, default=None, help="Scan grid size")
@click.option("--name", default=None, help="Label for the report")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table", show_default=True)
@click.pass_context
@guarded
def bounds(
    ctx: click.Context,
    fn: str,
    a: float,
    b: float,
    x: str,
    tol: float | None,
    solver_tol: float | None,
    grid_n: int | None,
    name: str | None,
    fmt: str,
) -> None:
    """
    Compute the trapezoid error envelope and every derived check.

    Exits with 2 when an inequality that must hold fails.
    """
    f = FunctionDef.from_text(fn, name=name)
    iv = Interval(a, b)
    report = build_report(
        f,
        iv,
        x=parse_x(x, iv),
        tol=setting(ctx, tol, "tol"),
        solver_tol=setting(ctx, solver_tol, "solver_tol"),
        grid_n=setting(ctx, grid_n, "grid_n"),
    )

    if fmt == "json":
        click.echo(report_to_json(report))
    elif fmt == "csv":
        click.echo(write_csv([report_csv_row(report)]), nl=False)
    else:
        click.echo(format_report(report))

    failed = report.violations()
    if failed:
        raise InequalityViolation(f"Inequality violated for '{report.name}' on {iv}: {', '.join(failed)}", failed)


@cli.command()
@click.option("--fn", "fn", required=True, help="Integrand in s")
@click.option("--a", "a", type=float, required=True, help="Left endpoint")
@click.option("--b", "b", type=float, required=True, help="Right endpoint")
@click.option("--tol", type=float, default=None, help="Quadrature tolerance")
@click.option("--solver-tol", type=float, default=None, help="Mean-value solver tolerance")
@click.option("--grid", "grid_n", type=int, default=None, help="Scan grid size")
@click.option("--all-roots", is_flag=True, help="List every root found on the scan grid")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table", show_default=True)
@click.pass_context
@guarded
def meanpoint(
    ctx: click.Context,
    fn: str,
    a: float,
    b: float,
    tol: float | None,
    solver_tol: float | None,
    grid_n: int | None,
    all_roots: bool,
    fmt: str,
) -> None:
    """Solve F'(x) = (F(b) - F(a)) / (b - a) for the mean-value point x."""
    f = FunctionDef.from_text(fn)
    iv = Interval(a, b)
    point = solve_mvt(
        f,
        iv,
        grid_n=setting(ctx, grid_n, "grid_n"),
        tol=setting(ctx, solver_tol, "solver_tol"),
        quad_tol=setting(ctx, tol, "tol"),
    )

    if fmt == "json":
        click.echo(json.dumps(meanpoint_to_dict(point, f.label, a, b), indent=2))
    elif fmt == "csv":
        click.echo(write_csv([meanpoint_csv_row(point, f.label, a, b)], MEANPOINT_CSV_COLUMNS), nl=False)
    else:
        click.echo(format_meanpoint(point, f.label, iv, all_roots=all_roots))


@cli.command()
@click.option("--alpha", type=float, default=None, help="First argument of the means")
@click.option("--beta", type=float, default=None, help="Second argument of the means")
@click.option("--r", "r", type=float, default=2.0, show_default=True, help="Order of the power mean M_r")
@click.option("--p", "p", type=float, default=2.0, show_default=True, help="Order of L_p and of the power application")
@click.option("--axioms", is_flag=True, help="Also check the mean axioms near (alpha, beta)")
@click.option("--check-app", type=click.Choice(sorted(VALID_APPLICATIONS)), default=None, help="Run an application")
@click.option("--a", "a", type=float, default=None, help="Left endpoint for --check-app")
@click.option("--b", "b", type=float, default=None, help="Right endpoint for --check-app")
@click.option("--tol", type=float, default=None, help="Quadrature tolerance for --check-app")
@click.option("--solver-tol", type=float, default=None, help="Mean-value solver tolerance for --check-app")
@click.option("--grid", "grid_n", type=int, default=None, help="Scan grid size for --check-app")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table", show_default=True)
@click.pass_context
@guarded
def means(
    ctx: click.Context,
    alpha: float | None,
    beta: float | None,
    r: float,
    p: float,
    axioms: bool,
    check_app: str | None,
    a: float | None,
    b: float | None,
    tol: float | None,
    solver_tol: float | None,
    grid_n: int | None,
    fmt: str,
) -> None:
    """
    Print the special means of (alpha, beta), or check an application.

    With --check-app the trapezoid envelope of 1/s^2, 1/s, ln(s) or s^p on
    [a, b] is rewritten with means and verified; a failed check exits with 2.
    """
    if check_app is not None:
        if a is None or b is None:
            raise ArgumentError("--check-app needs --a and --b", "a, b required")
        report = application_check(
            check_app,  # type: ignore[arg-type]
            Interval(a, b),
            p=p if check_app == "power" else None,
            grid_n=setting(ctx, grid_n, "grid_n"),
            tol=setting(ctx, solver_tol, "solver_tol"),
            quad_tol=setting(ctx, tol, "tol"),
        )
        click.echo(format_application(report))
        if not report.ok:
            raise InequalityViolation(f"Application {check_app} failed on [{a}, {b}]", [check_app])
        return

    if alpha is None or beta is None:
        raise ArgumentError("means needs --alpha and --beta (or --check-app)", "alpha, beta required")

    pair = MeanPair(alpha, beta)
    values = {
        "A": mean("A", pair),
        "G": mean("G", pair),
        "H": mean("H", pair),
        "L": mean("L", pair),
        "I": mean("I", pair),
        f"M_{r:g}": mean("M", pair, r),
        f"L_{p:g}": mean("Lp", pair, p),
    }
    chain_ok = mean_chain_check(pair)

    if fmt == "json":
        click.echo(json.dumps({"alpha": alpha, "beta": beta, "means": values, "chain_ok": chain_ok}, indent=2))
    else:
        click.echo(format_mean_table(pair, values, chain_ok))

    if axioms:
        samples = [pair, MeanPair(alpha, beta + 1), MeanPair(alpha + 1, beta + 1)]
        for kind in sorted(VALID_MEAN_KINDS):
            order = r if kind == "M" else p if kind == "Lp" else None
            click.echo(format_axioms(mean_axioms_check(kind, samples, order)))  # type: ignore[arg-type]

    if not chain_ok:
        raise InequalityViolation(f"Mean chain H <= G <= L <= I <= A fails at ({alpha}, {beta})", ["chain"])


@cli.command()
@click.option("--corpus", "corpus", default="paper", show_default=True, help="Builtin corpus name or corpus file")
@click.option("--jobs", type=int, default=None, help="Worker processes")
@click.option("--tol", type=float, default=None, help="Quadrature tolerance")
@click.option("--solver-tol", type=float, default=None, help="Mean-value solver tolerance")
@click.option("--grid", "grid_n", type=int, default=None, help="Scan grid size")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Write the CSV here instead of stdout")
@click.pass_context
@guarded
def sweep(
    ctx: click.Context,
    corpus: str,
    jobs: int | None,
    tol: float | None,
    solver_tol: float | None,
    grid_n: int | None,
    output: str | None,
) -> None:
    """
    Run the bounds pipeline over a corpus and print one CSV row per entry.

    Rows keep the corpus order for any number of jobs.
    """
    jobs = setting(ctx, jobs, "jobs")
    if jobs < 1:
        raise ArgumentError(f"--jobs must be >= 1, got {jobs}", "jobs >= 1")

    entries = load_corpus(corpus)
    outcomes = run_sweep(
        entries,
        tol=setting(ctx, tol, "tol"),
        solver_tol=setting(ctx, solver_tol, "solver_tol"),
        grid_n=setting(ctx, grid_n, "grid_n"),
        jobs=jobs,
    )

    for outcome in outcomes:
        if outcome.error is not None:
            raise TrapboundError(f"Corpus entry '{outcome.entry.name}' failed: {outcome.error}")

    reports = [outcome.report for outcome in outcomes if outcome.report is not None]
    text = write_csv(report_csv_row(report) for report in reports)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(reports)} rows to {output}")
    else:
        click.echo(text, nl=False)

    failed = [report.name for report in reports if not report.sandwich_ok]
    if failed:
        raise InequalityViolation(f"Sandwich fails for: {', '.join(failed)}", failed)
