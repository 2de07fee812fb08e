"""Run the bounds pipeline over a corpus, optionally in worker processes."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from trapbound.services.corpus import CorpusEntry
from trapbound.services.errors import TrapboundError
from trapbound.services.meanvalue import DEFAULT_GRID_N, DEFAULT_SOLVER_TOL
from trapbound.services.quad import DEFAULT_TOL
from trapbound.services.report import Report, build_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepOutcome:
    """Result for one corpus entry: a report, or the message of the error it raised."""

    entry: CorpusEntry
    report: Report | None
    error: str | None = None


def _sweep_one(task: tuple[CorpusEntry, float, float, int]) -> SweepOutcome:
    # Tasks and outcomes carry only plain data; compiled closures are rebuilt per process.
    entry, tol, solver_tol, grid_n = task
    try:
        report = build_report(entry.function(), entry.interval(), tol=tol, solver_tol=solver_tol, grid_n=grid_n)
    except TrapboundError as e:
        return SweepOutcome(entry, None, e.message)
    return SweepOutcome(entry, report)


def sweep(
    entries: list[CorpusEntry],
    tol: float = DEFAULT_TOL,
    solver_tol: float = DEFAULT_SOLVER_TOL,
    grid_n: int = DEFAULT_GRID_N,
    jobs: int = 1,
) -> list[SweepOutcome]:
    """
    Build a report for every entry.

    Args:
        entries: Corpus entries
        tol: Quadrature tolerance
        solver_tol: Mean-value solver tolerance
        grid_n: Scan grid size
        jobs: Worker processes; 1 runs in-process

    Returns:
        One outcome per entry, in input order whatever the number of jobs
    """
    tasks = [(entry, tol, solver_tol, grid_n) for entry in entries]
    logger.info(f"Sweeping {len(tasks)} entries with {jobs} job(s)")

    if jobs <= 1:
        return [_sweep_one(task) for task in tasks]

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_one, tasks))
