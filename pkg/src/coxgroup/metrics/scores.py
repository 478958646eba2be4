"""Pairwise model scores: empirical EPE and Harrell's C-index.

Both are taken over comparable pairs ``(i, j)`` with ``delta_i = 1`` and
``t_j > t_i``.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from coxgroup.errors import InvalidArgumentError, NoComparablePairsError
from coxgroup.metrics.rejection import rejection_fraction
from coxgroup.survival import SurvivalDataset, risk_scores
from coxgroup.types import ArrayLike, BoolArray, FloatArray

_BLOCK_CELLS = 2_000_000


@dataclass(frozen=True, slots=True)
class MetricReport:
    """Scores of one Cox model on one group of points."""

    epe: float
    c_index: float
    rejection_fraction: float
    n_points: int
    n_comparable_pairs: int

    def to_dict(self) -> dict[str, float | int]:
        return {
            "epe": self.epe,
            "c_index": self.c_index,
            "rejection_fraction": self.rejection_fraction,
            "n_points": self.n_points,
            "n_comparable_pairs": self.n_comparable_pairs,
        }


def _comparable_blocks(
    eta: FloatArray, data: SurvivalDataset
) -> Iterator[tuple[FloatArray, FloatArray, BoolArray]]:
    """Yield ``(eta_failed, eta_tail, later_mask)`` blocks over failed rows.

    Failed rows come in time order, so each block only needs the time-sorted
    rows from its earliest strictly later time onwards.
    """
    order = data.sort_index
    eta = eta[order]
    times = data.times[order]
    failed = np.flatnonzero(data.events[order] == 1)
    starts = np.searchsorted(times, times[failed], side="right")
    n = eta.shape[0]
    positions = np.arange(n)
    lo = 0
    while lo < failed.shape[0]:
        first = int(starts[lo])
        rows = max(1, _BLOCK_CELLS // max(1, n - first))
        block = slice(lo, lo + rows)
        later = positions[None, first:] >= starts[block][:, None]
        yield eta[failed[block]], eta[first:], later
        lo += rows


def count_comparable_pairs(data: SurvivalDataset) -> int:
    """Number of pairs with an observed earlier failure and a strictly later time."""
    times = np.sort(data.times)
    failed_times = data.times[data.events == 1]
    later = data.n - np.searchsorted(times, failed_times, side="right")
    return int(later.sum())


def empirical_epe(beta: ArrayLike, data: SurvivalDataset) -> float:
    """Expected prediction entropy of ``beta`` on ``data``.

    The mean over comparable pairs of ``log(1 + exp(eta_j - eta_i))``, the
    cross-entropy of predicting that the earlier failure ``i`` fails first.

    Args:
        beta: Cox coefficients.
        data: Points to score.

    Returns:
        Non-negative EPE; ``log 2`` for ``beta = 0``.

    Raises:
        NoComparablePairsError: If no comparable pair exists.
    """
    eta = risk_scores(beta, data.x_adjust)
    partial: list[float] = []
    pairs = 0
    for eta_i, eta_tail, later in _comparable_blocks(eta, data):
        loss = np.logaddexp(0.0, eta_tail[None, :] - eta_i[:, None])
        partial.extend(np.sum(loss, axis=1, where=later).tolist())
        pairs += int(later.sum())
    if pairs == 0:
        raise NoComparablePairsError("epe")
    return math.fsum(partial) / pairs


def c_index(beta: ArrayLike, data: SurvivalDataset) -> float:
    """Harrell's concordance index; tied scores count one half.

    Raises:
        NoComparablePairsError: If no comparable pair exists.
    """
    eta = risk_scores(beta, data.x_adjust)
    score = 0.0
    pairs = 0
    for eta_i, eta_tail, later in _comparable_blocks(eta, data):
        diff = eta_i[:, None] - eta_tail[None, :]
        concordant = np.count_nonzero((diff > 0) & later)
        tied = np.count_nonzero((diff == 0) & later)
        score += concordant + 0.5 * tied
        pairs += int(later.sum())
    if pairs == 0:
        raise NoComparablePairsError("c_index")
    return score / pairs


def evaluate_model(beta: ArrayLike, data: SurvivalDataset, alpha: float = 0.1) -> MetricReport:
    """EPE, C-index and rejection fraction of one model on one group.

    Raises:
        NoComparablePairsError: If no comparable pair exists.
        GroupTooSmallError: If the group has fewer than two points.
        InvalidArgumentError: If ``alpha`` is outside ``(0, 1)``.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError("must lie in (0, 1)", "alpha")
    return MetricReport(
        epe=empirical_epe(beta, data),
        c_index=c_index(beta, data),
        rejection_fraction=rejection_fraction(data, beta, alpha),
        n_points=data.n,
        n_comparable_pairs=count_comparable_pairs(data),
    )
