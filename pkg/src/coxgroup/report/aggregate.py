"""Per-method aggregation of selected records over replicates."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from coxgroup.execution import MissingSelection, RunRecord

BASE_METRICS = ("test_epe", "test_rejection_fraction", "test_c_index", "size_fraction")
TRUTH_METRICS = ("f1", "precision", "recall")


@dataclass(frozen=True, slots=True)
class MetricStat:
    """Mean and standard error of one metric over replicates."""

    mean: float | None
    se: float | None
    count: int


def mean_se(values: Sequence[float | None]) -> MetricStat:
    """Mean and standard error (``sd / sqrt(k)``, ``ddof = 1``) of the present values.

    A single value has standard error 0; no values give ``None``.
    """
    present = np.array([v for v in values if v is not None and math.isfinite(v)], dtype=float)
    if present.size == 0:
        return MetricStat(None, None, 0)
    mean = float(present.mean())
    se = 0.0 if present.size == 1 else float(present.std(ddof=1) / math.sqrt(present.size))
    return MetricStat(mean, se, int(present.size))


@dataclass
class MethodSummary:
    """Aggregated metrics of one method.

    Attributes:
        method: Method value.
        replicates: Replicates with a selected record.
        missing: Replicates where selection failed.
        stats: Metric name to its aggregate.
    """

    method: str
    replicates: int
    missing: int
    stats: dict[str, MetricStat] = field(default_factory=dict)

    def __getitem__(self, metric: str) -> MetricStat:
        return self.stats[metric]


def metric_names(with_truth: bool) -> tuple[str, ...]:
    return BASE_METRICS + TRUTH_METRICS if with_truth else BASE_METRICS


def aggregate(
    selected: Sequence[RunRecord],
    missing: Sequence[MissingSelection] = (),
    methods: Sequence[str] | None = None,
    with_truth: bool = False,
) -> list[MethodSummary]:
    """Summarise selected records per method.

    Args:
        selected: One selected record per (method, replicate).
        missing: Selections that failed.
        methods: Output order; order of first appearance when omitted.
        with_truth: Include F1, precision and recall.

    Returns:
        One summary per method.
    """
    order = list(methods) if methods is not None else list(
        dict.fromkeys([r.method for r in selected] + [m.method for m in missing])
    )
    summaries: list[MethodSummary] = []
    for method in order:
        records = [r for r in selected if r.method == method]
        summary = MethodSummary(
            method=method,
            replicates=len(records),
            missing=sum(1 for m in missing if m.method == method),
        )
        for metric in metric_names(with_truth):
            summary.stats[metric] = mean_se([getattr(r, metric) for r in records])
        summaries.append(summary)
    return summaries
