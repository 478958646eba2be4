"""Conditional rank statistics of a test point against a core group.

For a time-sorted core group and a test point ``x*`` failing at insertion
rank ``k``, the partial likelihood of the combined ordering is ``r_k``.
Normalising ``r_1 .. r_{n+1}`` gives the conditional rank probabilities.
Consecutive ranks differ by a single factor, so all ``n + 1`` values come
from one pass over the core's log suffix sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp, softmax

from coxgroup.errors import InvalidArgumentError
from coxgroup.survival import SurvivalDataset
from coxgroup.types import ArrayLike, FloatArray, IntArray

# Cap on the (test points x ranks) block materialised at once.
_BLOCK_CELLS = 4_000_000


@dataclass(frozen=True, slots=True)
class RankProbabilities:
    """Log unconditional rank probabilities and their normalised form.

    Attributes:
        log_r: ``log r_k`` for insertion ranks ``k = 1 .. n+1``.
        crs: ``softmax(log_r)``.
    """

    log_r: FloatArray
    crs: FloatArray

    def __len__(self) -> int:
        return int(self.log_r.shape[0])


@dataclass(frozen=True, slots=True)
class TailScore:
    """Rank tail score of one test point.

    Attributes:
        tau: Smaller tail mass at the observed rank (right tail only when censored).
        rank: 1-based insertion rank ``k*`` of the observed time.
        censored: Whether the test point was censored.
    """

    tau: float
    rank: int
    censored: bool


def _scores(beta: FloatArray, x: ArrayLike, d: int) -> FloatArray:
    matrix = np.asarray(x, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[None, :]
    if matrix.ndim != 2 or matrix.shape[1] != d:
        raise InvalidArgumentError(f"expected rows of length {d}", "x_star")
    eta = matrix @ beta
    if not np.all(np.isfinite(eta)):
        raise InvalidArgumentError("risk scores are not finite", "x_star")
    return eta


class RankScorer:
    """Scores test points against one fixed core group.

    The core's risk scores and log suffix sums are computed once, then each
    test point costs ``O(n)``.

    Args:
        beta: Cox coefficients used for every score.
        core: Core group; sorted by time internally.
    """

    def __init__(self, beta: ArrayLike, core: SurvivalDataset) -> None:
        self.beta = np.asarray(beta, dtype=np.float64).reshape(-1)
        if self.beta.shape[0] != core.d_adjust:
            raise InvalidArgumentError(
                f"has length {self.beta.shape[0]}, expected {core.d_adjust}", "beta"
            )
        core = core.sorted()
        eta = core.x_adjust @ self.beta
        if not np.all(np.isfinite(eta)):
            raise InvalidArgumentError("core risk scores are not finite", "beta")

        self.n = core.n
        self.times = core.times
        self.events = core.events.astype(bool)
        # log_suffix[k] = log sum_{j >= k} exp(eta_j); the last entry is the empty sum.
        self.log_suffix = np.append(np.logaddexp.accumulate(eta[::-1])[::-1], -np.inf)
        head = self.log_suffix[:-1]
        self._core_term = float(np.sum(eta[self.events] - head[self.events]))

    def log_probs(self, x_star: ArrayLike) -> FloatArray:
        """``log r_k`` for every test row; shape ``(m, n + 1)``."""
        a = _scores(self.beta, x_star, self.beta.shape[0])
        out = np.empty((a.shape[0], self.n + 1))
        rows = max(1, _BLOCK_CELLS // (self.n + 1))
        for lo in range(0, a.shape[0], rows):
            out[lo : lo + rows] = self._log_probs_block(a[lo : lo + rows])
        return out

    def _log_probs_block(self, a: FloatArray) -> FloatArray:
        a = a[:, None]
        head = self.log_suffix[:-1][None, :]
        tail = self.log_suffix[1:][None, :]
        # Moving x* from rank k to k+1 swaps core unit k ahead of it.
        leaving = np.where(self.events[None, :], head, np.logaddexp(head, a))
        steps = leaving - np.logaddexp(tail, a)
        first = a - np.logaddexp(self.log_suffix[0], a) + self._core_term
        log_r = np.empty((a.shape[0], self.n + 1))
        log_r[:, :1] = first
        log_r[:, 1:] = first + np.cumsum(steps, axis=1)
        return log_r

    def crs(self, x_star: ArrayLike) -> FloatArray:
        """Conditional rank probabilities per test row; rows sum to 1."""
        return softmax(self.log_probs(x_star), axis=1)

    def rank_probabilities(self, x_star: ArrayLike) -> RankProbabilities:
        """Rank probabilities of a single test point."""
        log_r = self.log_probs(x_star)
        if log_r.shape[0] != 1:
            raise InvalidArgumentError("expected a single test point", "x_star")
        return RankProbabilities(log_r=log_r[0], crs=softmax(log_r[0]))

    def insertion_ranks(self, t_star: ArrayLike) -> IntArray:
        """1-based rank ``k* = 1 + #{core times <= t*}``."""
        t = np.atleast_1d(np.asarray(t_star, dtype=np.float64))
        if np.any(t < 0) or not np.all(np.isfinite(t)):
            raise InvalidArgumentError("must be finite and non-negative", "t_star")
        return np.searchsorted(self.times, t, side="right").astype(np.int64) + 1

    def tail_scores(
        self, x_star: ArrayLike, t_star: ArrayLike, delta_star: ArrayLike
    ) -> tuple[FloatArray, IntArray]:
        """Rank tail scores and insertion ranks for many test points.

        Args:
            x_star: ``m x d1`` test features.
            t_star: Observed test times.
            delta_star: Test event indicators.

        Returns:
            Tuple of ``(tau, ranks)``.
        """
        ranks = self.insertion_ranks(t_star)
        delta = np.atleast_1d(np.asarray(delta_star)).astype(bool)
        log_r = self.log_probs(x_star)
        if not (log_r.shape[0] == ranks.shape[0] == delta.shape[0]):
            raise InvalidArgumentError("x_star, t_star and delta_star differ in length")

        tau = np.empty(log_r.shape[0])
        rows = max(1, _BLOCK_CELLS // (self.n + 1))
        for lo in range(0, log_r.shape[0], rows):
            block = softmax(log_r[lo : lo + rows], axis=1)
            cum = np.cumsum(block, axis=1)
            k = ranks[lo : lo + rows]
            idx = np.arange(block.shape[0])
            left = cum[idx, k - 1]
            before = np.where(k >= 2, cum[idx, np.maximum(k - 2, 0)], 0.0)
            right = cum[:, -1] - before
            tau[lo : lo + rows] = np.where(delta[lo : lo + rows], np.minimum(left, right), right)
        return np.clip(tau, 0.0, 1.0), ranks

    def tail_score(self, x_star: ArrayLike, t_star: float, delta_star: int) -> TailScore:
        """Rank tail score of a single test point."""
        tau, ranks = self.tail_scores(x_star, [t_star], [delta_star])
        return TailScore(tau=float(tau[0]), rank=int(ranks[0]), censored=not bool(delta_star))


def fast_log_rank_probs(
    beta: ArrayLike, core: SurvivalDataset, x_star: ArrayLike
) -> RankProbabilities:
    """Rank probabilities of ``x_star`` in ``O(n)`` via the rank-to-rank recursion.

    Raises:
        InvalidArgumentError: If dimensions disagree or scores are not finite.
    """
    return RankScorer(beta, core).rank_probabilities(x_star)


def naive_log_rank_probs(
    beta: ArrayLike, core: SurvivalDataset, x_star: ArrayLike
) -> RankProbabilities:
    """Rank probabilities by evaluating every insertion product directly.

    ``O(n^3)``; meant as a reference for small cores.
    """
    b = np.asarray(beta, dtype=np.float64).reshape(-1)
    core = core.sorted()
    if b.shape[0] != core.d_adjust:
        raise InvalidArgumentError(f"has length {b.shape[0]}, expected {core.d_adjust}", "beta")
    eta = core.x_adjust @ b
    a = float(_scores(b, x_star, b.shape[0])[0])
    if not np.all(np.isfinite(eta)):
        raise InvalidArgumentError("core risk scores are not finite", "beta")

    log_r = np.empty(core.n + 1)
    for k in range(core.n + 1):
        seq = np.insert(eta, k, a)
        failed = np.insert(core.events, k, 1)
        total = 0.0
        for i in range(seq.shape[0]):
            if failed[i]:
                total += seq[i] - logsumexp(seq[i:])
        log_r[k] = total
    return RankProbabilities(log_r=log_r, crs=softmax(log_r))


def rank_tail_score(
    beta: ArrayLike,
    core: SurvivalDataset,
    x_star: ArrayLike,
    t_star: float,
    delta_star: int,
) -> TailScore:
    """Rank tail score of a test point observed at ``t_star``.

    The insertion rank places the test point after core times equal to
    ``t_star``. Both tails include rank ``k*``. A censored test point
    (``delta_star = 0``) is scored by its right tail only.

    Args:
        beta: Cox coefficients.
        core: Core group.
        x_star: Test features.
        t_star: Observed time of the test point.
        delta_star: 1 if the test point failed, 0 if censored.

    Returns:
        The tail score with its insertion rank.
    """
    if delta_star not in (0, 1):
        raise InvalidArgumentError("must be 0 or 1", "delta_star")
    return RankScorer(beta, core).tail_score(x_star, t_star, delta_star)
