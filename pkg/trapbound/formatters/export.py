"""Machine-readable output: JSON documents and CSV rows."""

import csv
import io
import json
from typing import Any, Iterable

from trapbound.services.meanvalue import MeanValuePoint
from trapbound.services.report import Report

CSV_COLUMNS: list[str] = [
    "name",
    "expr",
    "a",
    "b",
    "x",
    "degenerate",
    "M",
    "m",
    "lower",
    "middle",
    "upper",
    "delta",
    "classical_bound",
    "in_class_F",
    "sandwich_ok",
]

MEANPOINT_CSV_COLUMNS: list[str] = ["function", "a", "b", "x", "residual", "degenerate", "secant", "roots"]


def csv_number(value: float | None) -> str:
    """17 significant digits, round-trip safe; empty for a missing value."""
    if value is None:
        return ""
    return format(value, ".17g")


def csv_bool(value: bool) -> str:
    return "true" if value else "false"


def report_to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2)


def report_from_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def meanpoint_to_dict(point: MeanValuePoint, name: str, a: float, b: float) -> dict[str, Any]:
    return {
        "function": name,
        "interval": {"a": a, "b": b},
        "x": point.x,
        "residual": point.residual,
        "degenerate": point.degenerate,
        "roots": list(point.roots),
        "bracket": list(point.bracket) if point.bracket is not None else None,
        "secant": point.secant,
    }


def meanpoint_csv_row(point: MeanValuePoint, name: str, a: float, b: float) -> list[str]:
    """One row in MEANPOINT_CSV_COLUMNS order; roots share a cell, separated by ';'."""
    return [
        name,
        csv_number(a),
        csv_number(b),
        csv_number(point.x),
        csv_number(point.residual),
        csv_bool(point.degenerate),
        csv_number(point.secant),
        ";".join(csv_number(root) for root in point.roots),
    ]


def report_csv_row(report: Report) -> list[str]:
    """One CSV row in CSV_COLUMNS order; the timing is left out so rows are deterministic."""
    return [
        report.name,
        report.function,
        csv_number(report.a),
        csv_number(report.b),
        csv_number(report.x),
        csv_bool(report.degenerate),
        csv_number(report.M),
        csv_number(report.m),
        csv_number(report.lower),
        csv_number(report.middle),
        csv_number(report.upper),
        csv_number(report.delta),
        csv_number(report.classical_trap_bound),
        csv_bool(report.in_class_F),
        csv_bool(report.sandwich_ok),
    ]


def write_csv(rows: Iterable[list[str]], columns: list[str] = CSV_COLUMNS) -> str:
    """Render a header plus rows with Unix line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()
