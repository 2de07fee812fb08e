import json
import math

import pytest

from trapbound.formatters import CSV_COLUMNS, format_report, report_csv_row, report_from_json, report_to_json, write_csv
from trapbound.services.expr import FunctionDef
from trapbound.services.quad import Interval
from trapbound.services.report import Report, build_report


@pytest.fixture
def recip_sq_report(recip_sq, one_two, grid_n) -> Report:
    return build_report(recip_sq, one_two, grid_n=grid_n)


def test_report_at_the_mean_value_point(recip_sq_report):
    report = recip_sq_report
    assert report.name == "recip_sq"
    assert report.function == "1/s^2"
    assert report.x == pytest.approx(math.sqrt(2.0), abs=1e-8)
    assert report.x_is_mvt
    assert report.middle == pytest.approx(0.125, abs=1e-10)
    assert report.psi == pytest.approx(1.655330, abs=1e-6)
    assert report.classical_trap_bound == pytest.approx(0.5)
    assert report.classical_simpson_bound == pytest.approx(120.0 / 90.0)
    assert report.sandwich_ok and report.intermediate_ok and report.delta_identity_ok
    assert report.violations() == []
    assert report.grid_n == 32


def test_user_point_does_not_count_the_sandwich(recip_sq, one_two):
    report = build_report(recip_sq, one_two, x=1.5)
    assert not report.x_is_mvt
    assert report.roots == ()
    assert not report.sandwich_ok
    assert report.violations() == []
    assert report.residual > 0.0


def test_classical_bounds_are_optional():
    report = build_report(FunctionDef.from_text("abs(s - 1.5) + 1"), Interval(1.0, 2.0), x=1.25)
    assert report.classical_trap_bound is None
    assert report.classical_simpson_bound is None


def test_dict_round_trip(recip_sq_report):
    assert Report.from_dict(recip_sq_report.to_dict()) == recip_sq_report


def test_json_round_trip(recip_sq_report):
    text = report_to_json(recip_sq_report)
    assert report_from_json(text) == recip_sq_report

    data = json.loads(text)
    assert set(data) >= {"function", "interval", "mvt", "geometry", "envelope", "alt_form", "psi", "classical_trap_bound", "simpson", "checks"}
    assert set(data["checks"]) == {"sandwich_ok", "eq24_ok", "delta_identity_ok"}
    assert data["oracle"] == {"tol": 1e-10, "solver_tol": 1e-10, "grid_n": 32}


def test_csv_row(recip_sq_report):
    text = write_csv([report_csv_row(recip_sq_report)])
    header, row, trailing = text.split("\n")
    assert header == ",".join(CSV_COLUMNS)
    assert trailing == ""

    cells = dict(zip(CSV_COLUMNS, row.split(",")))
    assert cells["name"] == "recip_sq"
    assert float(cells["x"]) == recip_sq_report.x
    assert cells["sandwich_ok"] == "true"
    assert cells["degenerate"] == "false"


def test_table_uses_six_significant_digits(recip_sq_report):
    table = format_report(recip_sq_report)
    assert "x: 1.41421 (mean-value point)" in table
    assert "sandwich ok" in table
