"""Tests for per-method aggregation."""

from __future__ import annotations

import math

import pytest

from coxgroup.execution import MissingSelection, RunRecord
from coxgroup.report import BASE_METRICS, TRUTH_METRICS, aggregate, mean_se


def selected(method: str, replicate: int, epe: float | None, f1: float = 0.5) -> RunRecord:
    return RunRecord(
        method=method,
        setting=method,
        params={},
        replicate=replicate,
        test_epe=epe,
        size_fraction=0.5,
        f1=f1,
        selected=True,
    )


class TestMeanSe:
    """Tests for mean_se."""

    def test_sample_sd(self) -> None:
        """Standard error uses ddof = 1."""
        stat = mean_se([1.0, 2.0, 3.0])
        assert stat.mean == 2.0
        assert stat.se == pytest.approx(1.0 / math.sqrt(3))
        assert stat.count == 3

    def test_single_value(self) -> None:
        """One value has zero standard error."""
        assert mean_se([0.7]).se == 0.0

    def test_missing_values_skipped(self) -> None:
        """None and non-finite values are ignored."""
        stat = mean_se([None, float("nan"), 4.0])
        assert stat.mean == 4.0 and stat.count == 1

    def test_empty(self) -> None:
        """Nothing present gives None."""
        stat = mean_se([None])
        assert stat.mean is None and stat.se is None and stat.count == 0


class TestAggregate:
    """Tests for aggregate."""

    def test_per_method(self) -> None:
        """Each method aggregates its own replicates."""
        records = [selected("base", 0, 0.2), selected("dg", 0, 0.1), selected("base", 1, 0.4)]
        summaries = aggregate(records, methods=["dg", "base"])
        assert [s.method for s in summaries] == ["dg", "base"]
        assert summaries[1].replicates == 2
        assert summaries[1]["test_epe"].mean == pytest.approx(0.3)
        assert set(summaries[0].stats) == set(BASE_METRICS)

    def test_truth_metrics(self) -> None:
        """F1, precision and recall appear only with a truth."""
        summaries = aggregate([selected("base", 0, 0.2, f1=0.8)], with_truth=True)
        assert set(summaries[0].stats) == set(BASE_METRICS + TRUTH_METRICS)
        assert summaries[0]["f1"].mean == 0.8
        assert summaries[0]["precision"].mean is None

    def test_missing_counted(self) -> None:
        """Failed selections are counted per method."""
        missing = [MissingSelection("prim", 0, "none"), MissingSelection("prim", 1, "none")]
        summaries = aggregate([selected("base", 0, 0.2)], missing)
        assert [s.method for s in summaries] == ["base", "prim"]
        assert summaries[1].replicates == 0
        assert summaries[1].missing == 2
        assert summaries[1]["test_epe"].mean is None
