"""Services package: expressions, quadrature, mean-value solver, bounds, means and sweeps."""

from trapbound.services.bounds import (
    Envelope,
    Geometry,
    SimpsonCheck,
    alt_form_bounds,
    classical_simpson_bound,
    classical_trap_bound,
    envelope,
    gap_delta,
    geometry,
    hermite_hadamard_check,
    intermediate_sandwich_check,
    psi,
    simpson_exactness,
)
from trapbound.services.corpus import CorpusEntry, load_corpus
from trapbound.services.errors import TrapboundError
from trapbound.services.expr import FunctionDef, differentiate, evaluate, parse, to_text
from trapbound.services.meanvalue import F, F_prime, MeanValuePoint, secant_slope, solve_mvt
from trapbound.services.means import MeanPair, application_check, mean, mean_axioms_check, mean_chain_check
from trapbound.services.quad import Interval, QuadResult, composite_simpson, composite_trapezoid, integrate, sup_abs_derivative
from trapbound.services.report import Report, build_report
from trapbound.services.sweep import SweepOutcome, sweep

__all__ = [
    "CorpusEntry",
    "Envelope",
    "F",
    "F_prime",
    "FunctionDef",
    "Geometry",
    "Interval",
    "MeanPair",
    "MeanValuePoint",
    "QuadResult",
    "Report",
    "SimpsonCheck",
    "SweepOutcome",
    "TrapboundError",
    "alt_form_bounds",
    "application_check",
    "build_report",
    "classical_simpson_bound",
    "classical_trap_bound",
    "composite_simpson",
    "composite_trapezoid",
    "differentiate",
    "envelope",
    "evaluate",
    "gap_delta",
    "geometry",
    "hermite_hadamard_check",
    "integrate",
    "load_corpus",
    "intermediate_sandwich_check",
    "mean",
    "mean_axioms_check",
    "mean_chain_check",
    "parse",
    "psi",
    "secant_slope",
    "simpson_exactness",
    "solve_mvt",
    "sup_abs_derivative",
    "sweep",
    "to_text",
]
