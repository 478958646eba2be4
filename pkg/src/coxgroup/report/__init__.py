"""Aggregation and emission of sweep results."""

from coxgroup.report.aggregate import (
    BASE_METRICS,
    TRUTH_METRICS,
    MethodSummary,
    MetricStat,
    aggregate,
    mean_se,
)
from coxgroup.report.emit import (
    RESULTS_FILENAME,
    SUMMARY_FILENAME,
    Report,
    aggregate_and_emit,
    significant,
    summary_frame,
    summary_table,
    write_results,
    write_summary,
)

__all__ = [
    # Aggregation
    "BASE_METRICS",
    "TRUTH_METRICS",
    "MetricStat",
    "MethodSummary",
    "mean_se",
    "aggregate",
    # Emission
    "RESULTS_FILENAME",
    "SUMMARY_FILENAME",
    "Report",
    "significant",
    "summary_frame",
    "summary_table",
    "write_results",
    "write_summary",
    "aggregate_and_emit",
]
