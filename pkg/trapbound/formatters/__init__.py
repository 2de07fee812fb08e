"""Formatters package."""

from trapbound.formatters.export import (
    CSV_COLUMNS,
    MEANPOINT_CSV_COLUMNS,
    meanpoint_csv_row,
    meanpoint_to_dict,
    report_csv_row,
    report_from_json,
    report_to_json,
    write_csv,
)
from trapbound.formatters.text import (
    format_application,
    format_axioms,
    format_mean_table,
    format_meanpoint,
    format_report,
)

__all__ = [
    "CSV_COLUMNS",
    "MEANPOINT_CSV_COLUMNS",
    "format_application",
    "format_axioms",
    "format_mean_table",
    "format_meanpoint",
    "format_report",
    "meanpoint_csv_row",
    "meanpoint_to_dict",
    "report_csv_row",
    "report_from_json",
    "report_to_json",
    "write_csv",
]
