"""Result files and the console summary table."""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import pandas as pd
from rich.table import Table

from coxgroup.errors import OutputError
from coxgroup.execution import RunRecord, SweepResult
from coxgroup.report.aggregate import MethodSummary, aggregate, metric_names

RESULTS_FILENAME = "results.ndjson"
SUMMARY_FILENAME = "summary.csv"


def significant(value: Any, digits: int = 4) -> Any:
    """Round floats (recursively through lists and dicts) to ``digits`` significant digits."""
    if isinstance(value, bool) or value is None or isinstance(value, int | str):
        return value
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            return value
        return float(f"{value:.{digits}g}")
    if isinstance(value, dict):
        return {k: significant(v, digits) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [significant(v, digits) for v in value]
    return value


def write_results(records: Sequence[RunRecord], path: Path) -> Path:
    """Write one JSON object per record, fields in a fixed order."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(significant(record.to_dict())) + "\n")
    except OSError as e:
        raise OutputError(f"Cannot write results: {e}", path=path) from e
    return path


def summary_frame(summaries: Sequence[MethodSummary], with_truth: bool) -> pd.DataFrame:
    """One row per method with ``<metric>_mean`` and ``<metric>_se`` columns."""
    rows = []
    for summary in summaries:
        row: dict[str, Any] = {
            "method": summary.method,
            "replicates": summary.replicates,
            "missing": summary.missing,
        }
        for metric in metric_names(with_truth):
            stat = summary.stats[metric]
            row[f"{metric}_mean"] = stat.mean
            row[f"{metric}_se"] = stat.se
        rows.append(row)
    return pd.DataFrame(rows)


def write_summary(summaries: Sequence[MethodSummary], path: Path, with_truth: bool) -> Path:
    """Write the per-method summary as CSV with 4 significant digits."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        summary_frame(summaries, with_truth).to_csv(path, index=False, float_format="%.4g")
    except OSError as e:
        raise OutputError(f"Cannot write summary: {e}", path=path) from e
    return path


def _cell(mean: float | None, se: float | None) -> str:
    if mean is None:
        return "[dim]-[/dim]"
    return f"{mean:.4g} ({se:.2g})"


def summary_table(summaries: Sequence[MethodSummary], with_truth: bool) -> Table:
    """Rich table of ``mean (se)`` per method and metric."""
    labels = {
        "test_epe": "EPE",
        "test_rejection_fraction": "Rej",
        "test_c_index": "C-Index",
        "size_fraction": "Size",
        "f1": "F1",
        "precision": "Precision",
        "recall": "Recall",
    }
    table = Table(title="Selected subgroups (mean (se) over replicates)")
    table.add_column("Method", style="cyan")
    table.add_column("Reps", justify="right")
    for metric in metric_names(with_truth):
        table.add_column(labels[metric], justify="right")
    for summary in summaries:
        cells = [_cell(summary[m].mean, summary[m].se) for m in metric_names(with_truth)]
        reps = str(summary.replicates)
        if summary.missing:
            reps += f" [yellow]({summary.missing} missing)[/yellow]"
        table.add_row(summary.method, reps, *cells)
    return table


@dataclass(frozen=True, slots=True)
class Report:
    """Aggregated sweep output and where it was written."""

    summaries: list[MethodSummary]
    results_path: Path
    summary_path: Path
    with_truth: bool

    def table(self) -> Table:
        return summary_table(self.summaries, self.with_truth)


def aggregate_and_emit(
    result: SweepResult,
    output: Path,
    methods: Sequence[str] | None = None,
    with_truth: bool = False,
) -> Report:
    """Aggregate selected records and write ``results.ndjson`` and ``summary.csv``.

    Args:
        result: Sweep output.
        output: Output directory.
        methods: Method order of the summary.
        with_truth: Include region recovery metrics.

    Returns:
        Summaries and file locations.

    Raises:
        OutputError: If a file cannot be written.
    """
    selected = result.selected
    summaries = aggregate(selected, result.missing, methods=methods, with_truth=with_truth)
    return Report(
        summaries=summaries,
        results_path=write_results(selected, output / RESULTS_FILENAME),
        summary_path=write_summary(summaries, output / SUMMARY_FILENAME, with_truth),
        with_truth=with_truth,
    )
