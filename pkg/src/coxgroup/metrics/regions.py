"""Region recovery scores against a known ground truth."""

from __future__ import annotations

from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from coxgroup.errors import CoxGroupError, InvalidArgumentError
from coxgroup.metrics.scores import empirical_epe
from coxgroup.survival import Region, SurvivalDataset, fit_cox
from coxgroup.types import ArrayLike, FloatArray


def _f1(precision: float, recall: float) -> float:
    total = precision + recall
    return 0.0 if total == 0 else 2.0 * precision * recall / total


class RegionScore(NamedTuple):
    """Volume-based precision, recall and F1."""

    precision: float
    recall: float
    f1: float


class PointScore(NamedTuple):
    """Point-count precision and recall."""

    precision: float
    recall: float

    @property
    def f1(self) -> float:
        return _f1(self.precision, self.recall)


def region_f1(estimate: Region, truth: Region, bounds: Region) -> RegionScore:
    """Volume overlap between an estimated and a true region.

    Both regions are clipped to ``bounds`` first, so unbounded sides are
    measured up to the data's bounding box.

    Args:
        estimate: Region returned by a method.
        truth: Ground-truth region; must keep positive volume inside ``bounds``.
        bounds: Feature-space bounds.

    Returns:
        Precision ``|R n R*| / |R|`` (0 for a zero-volume estimate), recall
        ``|R n R*| / |R*|`` and their harmonic mean.

    Raises:
        InvalidArgumentError: If dimensions differ or the truth has no volume.
    """
    est = estimate.clip(bounds)
    tru = truth.clip(bounds)
    truth_volume = tru.volume()
    if not truth_volume > 0:
        raise InvalidArgumentError("must have positive volume within bounds", "truth")
    overlap = est.intersection_volume(tru)
    est_volume = est.volume()
    precision = overlap / est_volume if est_volume > 0 else 0.0
    recall = overlap / truth_volume
    return RegionScore(precision, recall, _f1(precision, recall))


def point_precision_recall(
    estimate: Region, truth_labels: ArrayLike, x_subgp: ArrayLike
) -> PointScore:
    """Precision and recall counted over data points rather than volume.

    Args:
        estimate: Region returned by a method.
        truth_labels: 1 for points in the true subgroup.
        x_subgp: Subgroup features, one row per label.

    Returns:
        Point precision (0 when the estimate holds no point) and recall.

    Raises:
        InvalidArgumentError: If lengths differ or no point is labelled true.
    """
    labels = np.asarray(truth_labels).astype(bool).reshape(-1)
    inside = estimate.contains(x_subgp)
    if inside.shape[0] != labels.shape[0]:
        raise InvalidArgumentError("length differs from x_subgp", "truth_labels")
    n_true = int(labels.sum())
    if n_true == 0:
        raise InvalidArgumentError("at least one point must be labelled true", "truth_labels")
    hits = int(np.count_nonzero(inside & labels))
    n_inside = int(inside.sum())
    precision = hits / n_inside if n_inside else 0.0
    return PointScore(precision, hits / n_true)


def best_point_match(
    estimate: Region, truths: Sequence[ArrayLike], x_subgp: ArrayLike
) -> tuple[int, PointScore]:
    """Associate an estimate with whichever of several ground truths it fits best.

    Truths are compared by precision, then recall; the first wins ties.

    Returns:
        Index of the chosen truth and the score against it.
    """
    if not truths:
        raise InvalidArgumentError("at least one truth is required", "truths")
    best_index = 0
    best = point_precision_recall(estimate, truths[0], x_subgp)
    for index, labels in enumerate(truths[1:], start=1):
        score = point_precision_recall(estimate, labels, x_subgp)
        if (score.precision, score.recall) > (best.precision, best.recall):
            best_index, best = index, score
    return best_index, best


def epe_interval_grid(data: SurvivalDataset, edges: ArrayLike, ridge: float = 0.0) -> FloatArray:
    """EPE of a separately fitted model on every interval ``[edges[a], edges[b]]``.

    Only defined for one subgroup feature. Cells with ``a >= b`` or where the
    fit or the EPE is undefined hold NaN.

    Returns:
        Square matrix indexed by ``(lower edge, upper edge)``.
    """
    if data.d_subgp != 1:
        raise InvalidArgumentError("needs exactly one subgroup feature", "data")
    grid = np.sort(np.asarray(edges, dtype=np.float64).reshape(-1))
    out = np.full((grid.shape[0], grid.shape[0]), np.nan)
    x = data.x_subgp[:, 0]
    for a, lo in enumerate(grid):
        for b in range(a + 1, grid.shape[0]):
            mask = (x >= lo) & (x <= grid[b])
            if not mask.any():
                continue
            group = data.subset(mask)
            try:
                model = fit_cox(group, ridge=ridge)
                out[a, b] = empirical_epe(model.beta, group)
            except CoxGroupError:
                continue
    return out
