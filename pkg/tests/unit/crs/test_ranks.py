"""Tests for conditional rank statistics."""

from __future__ import annotations

import numpy as np
import pytest

from coxgroup.crs import (
    RankScorer,
    fast_log_rank_probs,
    naive_log_rank_probs,
    rank_tail_score,
)
from coxgroup.errors import InvalidArgumentError
from coxgroup.survival import SurvivalDataset


def random_core(rng: np.random.Generator, n: int, d: int, censor: float) -> SurvivalDataset:
    x = rng.normal(size=(n, d))
    times = rng.exponential(size=n)
    events = (rng.uniform(size=n) >= censor).astype(int)
    return SurvivalDataset.from_arrays(x, times, events)


class TestFastLogRankProbs:
    """Tests for fast_log_rank_probs."""

    @pytest.mark.parametrize("n", [1, 2, 7, 50])
    def test_null_model_uniform(self, n: int) -> None:
        """beta=0 on an uncensored core gives uniform probabilities."""
        core = SurvivalDataset.from_arrays(np.zeros((n, 1)), np.arange(1.0, n + 1))
        probs = fast_log_rank_probs([0.0], core, [0.0])
        np.testing.assert_allclose(probs.crs, np.full(n + 1, 1 / (n + 1)), atol=1e-12)
        assert len(probs) == n + 1

    def test_two_point_symmetry(self) -> None:
        """n=1 with beta=0 gives (1/2, 1/2)."""
        core = SurvivalDataset.from_arrays([[3.0]], [1.0])
        np.testing.assert_allclose(fast_log_rank_probs([0.0], core, [5.0]).crs, [0.5, 0.5])

    @pytest.mark.parametrize("censor", [0.0, 0.3, 0.8])
    def test_matches_naive(self, censor: float) -> None:
        """Fast and naive log probabilities agree on random instances."""
        rng = np.random.default_rng(int(censor * 10))
        for _ in range(167):
            n = int(rng.integers(1, 51))
            d = int(rng.integers(1, 4))
            core = random_core(rng, n, d, censor)
            beta = rng.normal(size=d)
            x_star = rng.normal(size=d)
            fast = fast_log_rank_probs(beta, core, x_star)
            naive = naive_log_rank_probs(beta, core, x_star)
            np.testing.assert_allclose(fast.log_r, naive.log_r, atol=1e-8, rtol=0)

    def test_normalised(self, rng: np.random.Generator) -> None:
        """Conditional probabilities sum to one."""
        core = random_core(rng, 40, 2, 0.3)
        probs = fast_log_rank_probs(rng.normal(size=2), core, rng.normal(size=2))
        assert probs.crs.sum() == pytest.approx(1.0, abs=1e-10)
        assert (probs.crs >= 0).all()

    def test_shift_invariant(self, rng: np.random.Generator) -> None:
        """Translating every point along beta leaves the probabilities unchanged."""
        core = random_core(rng, 30, 2, 0.3)
        beta = np.array([0.8, -0.4])
        x_star = rng.normal(size=2)
        shift = 3.0 * beta / (beta @ beta)
        moved = SurvivalDataset.from_arrays(core.x_adjust + shift, core.times, core.events)
        np.testing.assert_allclose(
            fast_log_rank_probs(beta, core, x_star).crs,
            fast_log_rank_probs(beta, moved, x_star + shift).crs,
            atol=1e-10,
        )

    def test_large_scores_stay_finite(self, rng: np.random.Generator) -> None:
        """Risk scores far beyond exp's range stay finite in log space."""
        core = random_core(rng, 20, 1, 0.2)
        probs = fast_log_rank_probs([800.0], core, [2.0])
        assert np.all(np.isfinite(probs.crs))
        assert probs.crs.sum() == pytest.approx(1.0)

    def test_dimension_mismatch(self, rng: np.random.Generator) -> None:
        """Beta must match the core's features."""
        with pytest.raises(InvalidArgumentError):
            fast_log_rank_probs([1.0, 2.0], random_core(rng, 5, 1, 0.0), [0.0])


class TestNaiveLogRankProbs:
    """Tests for naive_log_rank_probs."""

    def test_fully_censored_core(self, rng: np.random.Generator) -> None:
        """Only the test point's own term remains when the core is censored."""
        core = SurvivalDataset.from_arrays(
            rng.normal(size=(6, 1)), np.arange(1.0, 7.0), np.zeros(6, dtype=int)
        )
        beta = np.array([0.7])
        a = 0.3
        probs = naive_log_rank_probs(beta, core, [a / 0.7])
        eta = core.sorted().x_adjust[:, 0] * 0.7
        suffix = [np.log(np.exp(eta[k:]).sum()) if k < 6 else -np.inf for k in range(7)]
        expected = [a - np.logaddexp(s, a) for s in suffix]
        np.testing.assert_allclose(probs.log_r, expected, atol=1e-12)
        assert np.all(np.diff(probs.crs) > 0)


class TestRankTailScore:
    """Tests for rank_tail_score."""

    def test_first_rank(self) -> None:
        """k*=1 under beta=0 gives 1/(n+1)."""
        core = SurvivalDataset.from_arrays(np.zeros((5, 1)), np.arange(1.0, 6.0))
        score = rank_tail_score([0.0], core, [0.0], 0.5, 1)
        assert score.rank == 1
        assert score.tau == pytest.approx(1 / 6)
        assert not score.censored

    def test_middle_rank_overlap(self) -> None:
        """Both tails include k*, so the middle score exceeds one half."""
        core = SurvivalDataset.from_arrays(np.zeros((4, 1)), np.arange(1.0, 5.0))
        score = rank_tail_score([0.0], core, [0.0], 2.5, 1)
        assert score.rank == 3
        assert score.tau == pytest.approx(3 / 5)

    def test_censored_uses_right_tail(self) -> None:
        """A censored late point has a small right tail."""
        core = SurvivalDataset.from_arrays(np.zeros((4, 1)), np.arange(1.0, 5.0))
        late = rank_tail_score([0.0], core, [0.0], 10.0, 0)
        early = rank_tail_score([0.0], core, [0.0], 0.1, 0)
        assert late.tau == pytest.approx(1 / 5)
        assert early.tau == pytest.approx(1.0)
        assert late.censored

    def test_ties_place_test_point_after(self) -> None:
        """A time equal to a core time ranks after it."""
        core = SurvivalDataset.from_arrays(np.zeros((3, 1)), [1.0, 2.0, 3.0])
        assert rank_tail_score([0.0], core, [0.0], 2.0, 1).rank == 3

    def test_invalid_delta(self) -> None:
        """delta_star must be 0 or 1."""
        core = SurvivalDataset.from_arrays(np.zeros((3, 1)), [1.0, 2.0, 3.0])
        with pytest.raises(InvalidArgumentError):
            rank_tail_score([0.0], core, [0.0], 1.0, 2)

    def test_negative_time(self) -> None:
        """t_star must be non-negative."""
        core = SurvivalDataset.from_arrays(np.zeros((3, 1)), [1.0, 2.0, 3.0])
        with pytest.raises(InvalidArgumentError):
            rank_tail_score([0.0], core, [0.0], -1.0, 1)


class TestRankScorer:
    """Tests for batched scoring."""

    def test_batch_matches_single(self, rng: np.random.Generator) -> None:
        """Batched tail scores equal one-at-a-time scores."""
        core = random_core(rng, 25, 2, 0.3)
        beta = np.array([0.5, -1.0])
        scorer = RankScorer(beta, core)
        x = rng.normal(size=(10, 2))
        t = rng.exponential(size=10)
        delta = rng.integers(0, 2, size=10)
        tau, ranks = scorer.tail_scores(x, t, delta)
        for i in range(10):
            single = rank_tail_score(beta, core, x[i], float(t[i]), int(delta[i]))
            assert tau[i] == pytest.approx(single.tau, abs=1e-12)
            assert ranks[i] == single.rank

    def test_crs_rows_sum_to_one(self, rng: np.random.Generator) -> None:
        """Each test row is a distribution over ranks."""
        scorer = RankScorer([1.0], random_core(rng, 15, 1, 0.5))
        np.testing.assert_allclose(scorer.crs(rng.normal(size=(4, 1))).sum(axis=1), 1.0)

    def test_mismatched_lengths(self, rng: np.random.Generator) -> None:
        """x_star, t_star and delta_star must align."""
        scorer = RankScorer([1.0], random_core(rng, 5, 1, 0.0))
        with pytest.raises(InvalidArgumentError):
            scorer.tail_scores(np.zeros((2, 1)), [1.0], [1])


@pytest.mark.slow
class TestCalibration:
    """Monte-Carlo checks of tail-score calibration."""

    @pytest.mark.parametrize("alpha", [0.05, 0.1])
    def test_tail_score_rejection_rate(self, alpha: float) -> None:
        """Fresh points from the core's own model are rarely rejected."""
        rates = []
        beta = np.array([1.0, -1.0])
        for seed in range(20):
            rng = np.random.default_rng(seed)
            x = rng.uniform(-1, 1, size=(700, 2))
            times = rng.exponential(size=700) * np.exp(-(x @ beta))
            core = SurvivalDataset.from_arrays(x[:500], times[:500])
            tau, _ = RankScorer(beta, core).tail_scores(x[500:], times[500:], np.ones(200))
            rates.append(np.mean(tau < alpha))
        assert np.mean(rates) <= 2 * alpha + 0.05
