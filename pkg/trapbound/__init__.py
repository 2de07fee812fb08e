"""Two-sided trapezoid error bounds for non-negative integrands."""

from trapbound.services import FunctionDef, Interval, envelope, solve_mvt

__all__ = ["FunctionDef", "Interval", "envelope", "solve_mvt"]
