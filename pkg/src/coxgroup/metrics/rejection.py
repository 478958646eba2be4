"""Rejection fraction: how many group members the group's own model flags."""

from __future__ import annotations

import numpy as np

from coxgroup.crs import RankScorer
from coxgroup.errors import GroupTooSmallError, InvalidArgumentError
from coxgroup.survival import SurvivalDataset
from coxgroup.types import ArrayLike, FloatArray


def leave_one_out_tail_scores(data: SurvivalDataset, beta: ArrayLike) -> FloatArray:
    """Rank tail score of every point against the other ``m - 1`` points.

    Returns:
        Scores in the row order of ``data``.

    Raises:
        GroupTooSmallError: If ``data`` has fewer than two rows.
    """
    if data.n < 2:
        raise GroupTooSmallError(data.n)
    ordered = data.sorted()
    keep = np.ones(ordered.n, dtype=bool)
    tau_sorted = np.empty(ordered.n)
    for i in range(ordered.n):
        keep[i] = False
        scorer = RankScorer(beta, ordered.subset(keep))
        keep[i] = True
        tau, _ = scorer.tail_scores(
            ordered.x_adjust[i], [ordered.times[i]], [ordered.events[i]]
        )
        tau_sorted[i] = tau[0]
    if ordered is data:
        return tau_sorted
    tau = np.empty(data.n)
    tau[data.sort_index] = tau_sorted
    return tau


def rejection_fraction(data: SurvivalDataset, beta: ArrayLike, alpha: float = 0.1) -> float:
    """Share of points whose leave-one-out rank tail score is below ``alpha``.

    Censored points are scored on their right tail only.

    Args:
        data: The group's points.
        beta: Cox coefficients of the group's model.
        alpha: Rejection level in ``(0, 1)``.

    Returns:
        Fraction in ``[0, 1]``.

    Raises:
        InvalidArgumentError: If ``alpha`` is outside ``(0, 1)``.
        GroupTooSmallError: If the group has fewer than two points.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError("must lie in (0, 1)", "alpha")
    tau = leave_one_out_tail_scores(data, beta)
    return float(np.mean(tau < alpha))
