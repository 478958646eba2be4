"""End-to-end benchmark reproductions and scaling checks."""

from __future__ import annotations

import time
from pathlib import Path

import numpy as np
import pytest

from coxgroup.config import ExperimentConfig
from coxgroup.crs import fast_log_rank_probs
from coxgroup.execution import run_sweep
from coxgroup.metrics import empirical_epe
from coxgroup.report import MethodSummary, aggregate
from coxgroup.survival import Region, SurvivalDataset, fit_cox
from coxgroup.synth import gen_counter, gen_plain_cox

pytestmark = [pytest.mark.integration, pytest.mark.slow]


def fitted_epe(data: SurvivalDataset, region: Region) -> float:
    group = data.restrict(region)
    return empirical_epe(fit_cox(group).beta, group)


class TestEpeGeometry:
    """How the EPE behaves across nested regions."""

    def test_counter_whole_interval_beats_truth(self) -> None:
        """On counter data the misspecified whole interval still has lower EPE."""
        wins = 0
        for seed in range(10):
            data, truth = gen_counter(n=4000, seed=seed)
            wins += int(fitted_epe(data, Region((0.0,), (1.0,))) < fitted_epe(data, truth))
        assert wins >= 9

    def test_larger_boxes_favoured(self) -> None:
        """Under a global Cox model a larger box never scores much worse."""
        hits = 0
        inner = Region((-0.5, -0.5), (0.5, 0.5))
        outer = Region((-1.0, -1.0), (1.0, 1.0))
        for seed in range(10):
            data = gen_plain_cox(4000, [1.0, 1.0], seed=seed)
            hits += int(fitted_epe(data, outer) <= fitted_epe(data, inner) + 0.02)
        assert hits >= 9


class TestRankScaling:
    """Rank probabilities grow linearly with the core size."""

    @staticmethod
    def best_time(n: int) -> float:
        data = gen_plain_cox(n, [1.0, -1.0], censor_rate=0.3, seed=n)
        x_star = np.array([0.2, -0.4])
        timings = []
        for _ in range(7):
            start = time.perf_counter()
            fast_log_rank_probs([1.0, -1.0], data, x_star)
            timings.append(time.perf_counter() - start)
        return min(timings)

    def test_linear(self) -> None:
        """Doubling the core roughly doubles one call, far from the fourfold quadratic cost."""
        assert self.best_time(20_000) / self.best_time(10_000) <= 2.1


def summarize(config: ExperimentConfig) -> dict[str, MethodSummary]:
    result = run_sweep(config)
    summaries = aggregate(result.selected, result.missing, config.method_names, True)
    return {s.method: s for s in summaries}


class TestNonlinearBenchmark:
    """Nonlinear benchmark with minimum-training-EPE selection."""

    def test_recovers_cube(self, tmp_path: Path) -> None:
        """DDGroup finds the cube; the whole-data fit cannot."""
        config = ExperimentConfig(
            synth={"kind": "nonlinear", "n": 4000, "d": 2, "seed": 0},
            methods=["base", "dg", "dg-ne"],
            replicates=10,
            core_centers=128,
            workers=4,
            output=tmp_path,
        )
        summaries = summarize(config)
        base, dg, ne = summaries["base"], summaries["dg"], summaries["dg-ne"]
        assert dg["f1"].mean >= 0.90
        assert base["f1"].mean <= 0.35
        assert base["test_epe"].mean == pytest.approx(0.69, abs=0.02)
        assert dg["test_epe"].mean <= 0.45
        assert ne["test_epe"].mean <= dg["test_epe"].mean + 0.05

    def test_partitioning_methods_miss_cube(self, tmp_path: Path) -> None:
        """The Cox tree and PRIM stay far from the cube."""
        config = ExperimentConfig(
            synth={"kind": "nonlinear", "n": 4000, "d": 2, "seed": 0},
            methods=["ct", "prim"],
            replicates=10,
            tree_thresholds=32,
            workers=4,
            output=tmp_path,
        )
        summaries = summarize(config)
        assert summaries["ct"]["f1"].mean == pytest.approx(0.33, abs=0.08)
        assert summaries["prim"]["f1"].mean == pytest.approx(0.30, abs=0.01)


class TestCounterBenchmark:
    """Counter benchmark with best-F1 selection."""

    def test_conformity_scores_ranked(self, tmp_path: Path) -> None:
        """Rank-based scores recover the Cox interval best."""
        config = ExperimentConfig(
            synth={"kind": "counter", "d": 1, "n": 4000, "seed": 0},
            methods=["base", "dg", "dg-ci", "dg-pl"],
            replicates=10,
            selection="best-f1",
            workers=4,
            output=tmp_path,
        )
        summaries = summarize(config)
        assert summaries["dg"]["f1"].mean >= 0.88
        assert summaries["dg-ci"]["f1"].mean <= 0.85
        assert summaries["dg-pl"]["f1"].mean <= 0.90
        assert summaries["base"]["f1"].mean == pytest.approx(0.75, abs=0.02)
