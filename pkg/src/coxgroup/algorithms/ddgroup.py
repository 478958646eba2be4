"""Core-group search, conformity scoring and box growth.

A DDGroup run finds the neighbourhood with the best local Cox fit, scores
every training point against that core group, rejects the lowest-scoring
quantile, and grows a box from the core mean until its faces meet rejected
points.
"""

from __future__ import annotations

import hashlib
import logging
import threading
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import expit

from coxgroup.algorithms.base import ConformityScore, DDGroupVariant, Quality
from coxgroup.crs import RankScorer
from coxgroup.errors import (
    CoxGroupError,
    InvalidArgumentError,
    NoValidCoreGroupError,
    TooFewPointsError,
)
from coxgroup.metrics import c_index, empirical_epe
from coxgroup.survival import CoxModel, Region, SurvivalDataset, fit_cox, risk_set_starts
from coxgroup.types import ArrayLike, BoolArray, FloatArray, IntArray

logger = logging.getLogger(__name__)

_BLOCK_CELLS = 2_000_000


@dataclass(frozen=True, slots=True)
class CoreGroup:
    """Best-fitting neighbourhood.

    Attributes:
        indices: Row indices of the neighbourhood, ascending.
        model: Cox model fit on those rows.
        quality: Value of the quality measure that selected it.
        center: Row index of the point whose neighbourhood it is.
    """

    indices: IntArray
    model: CoxModel
    quality: float
    center: int

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])


def standardize(x: ArrayLike) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Centre and scale each column; constant columns keep scale 1.

    Returns:
        Tuple of ``(z, mean, scale)``.
    """
    matrix = np.asarray(x, dtype=np.float64)
    mean = matrix.mean(axis=0)
    scale = matrix.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    return (matrix - mean) / scale, mean, scale


def core_size(n: int, core_frac: float, d_adjust: int) -> int:
    """``round(core_frac * n)`` floored at ``d_adjust + 2`` and capped at ``n``."""
    if not 0.0 < core_frac <= 1.0:
        raise InvalidArgumentError("must lie in (0, 1]", "core_frac")
    minimum = d_adjust + 2
    if n < minimum:
        raise TooFewPointsError(f"core group needs {minimum} points, dataset has {n}")
    return min(n, max(int(round(core_frac * n)), minimum))


def _quality(model: CoxModel, group: SurvivalDataset, quality: Quality) -> float:
    if quality is Quality.EPE:
        return empirical_epe(model.beta, group)
    if quality is Quality.C_INDEX:
        return c_index(model.beta, group)
    return model.log_pl


class CoreSearch:
    """Core-group searches over one training set that share their work.

    One k-d tree query at the largest neighbourhood size serves every smaller
    size, and each finished search is kept per ``(size, quality)``. Cox fits
    are kept for sizes searched under more than one quality, so the DDGroup
    variants pay for each shared neighbourhood once. Instances may be shared
    between threads.

    Args:
        data: Training data.
        ridge: Ridge penalty for each fit.
        max_centers: Evaluate only this many centres, chosen with a fixed seed.
        max_size: Largest neighbourhood size expected; the first query is made
            at this size so every later size is a slice of it.
        shared_sizes: Sizes whose fits are worth keeping.
        users: Number of :meth:`release` calls after which cached work is dropped.
    """

    def __init__(
        self,
        data: SurvivalDataset,
        ridge: float = 0.0,
        max_centers: int | None = None,
        max_size: int = 0,
        shared_sizes: Iterable[int] = (),
        users: int = 1,
    ) -> None:
        self.data = data
        self.ridge = ridge
        self.max_size = max_size
        self.shared_sizes = frozenset(shared_sizes)
        self.centers = np.arange(data.n)
        if max_centers is not None and max_centers < data.n:
            picked = np.random.default_rng(0).choice(data.n, size=max_centers, replace=False)
            self.centers = np.sort(picked)
        self._users = users
        self._lock = threading.Lock()
        self._neighbours: IntArray | None = None
        self._fits: dict[bytes, CoxModel | CoxGroupError] = {}
        self._results: dict[tuple[int, Quality], CoreGroup | NoValidCoreGroupError] = {}

    @classmethod
    def for_grids(
        cls,
        data: SurvivalDataset,
        grids: Mapping[Quality, Iterable[float]],
        ridge: float = 0.0,
        max_centers: int | None = None,
        users: int = 1,
    ) -> CoreSearch:
        """Search sized for the ``core_frac`` values each quality will ask for."""
        sizes = {
            quality: {core_size(data.n, f, data.d_adjust) for f in fractions}
            for quality, fractions in grids.items()
        }
        counts = Counter(k for group in sizes.values() for k in group)
        return cls(
            data,
            ridge=ridge,
            max_centers=max_centers,
            max_size=max(counts, default=0),
            shared_sizes=[k for k, count in counts.items() if count > 1],
            users=users,
        )

    def neighbourhoods(self, k: int) -> IntArray:
        """Sorted ``k``-nearest-neighbour rows of every centre, one row per centre."""
        n = self.data.n
        if k >= n:
            return np.broadcast_to(np.arange(n), (self.centers.shape[0], n))
        with self._lock:
            if self._neighbours is None or self._neighbours.shape[1] < k:
                size = min(n, max(k, self.max_size))
                z, _, _ = standardize(self.data.x_subgp)
                _, found = cKDTree(z).query(z[self.centers], k=size)
                found = np.asarray(found).reshape(self.centers.shape[0], size)
                self._neighbours = found.astype(np.int32)
            table = self._neighbours
        return np.sort(table[:, :k], axis=1)

    def fit(self, indices: IntArray) -> CoxModel:
        """Cox fit on the rows ``indices``, reused for shared sizes.

        Raises:
            CoxGroupError: If the fit fails.
        """
        rows = np.ascontiguousarray(indices, dtype=np.int64)
        keep = rows.shape[0] in self.shared_sizes
        key = hashlib.blake2b(rows.tobytes(), digest_size=16).digest() if keep else b""
        cached = self._fits.get(key) if keep else None
        if cached is None:
            try:
                cached = fit_cox(self.data.subset(rows), ridge=self.ridge)
            except CoxGroupError as e:
                cached = e
            if keep:
                with self._lock:
                    self._fits[key] = cached
        if isinstance(cached, CoxGroupError):
            raise cached
        return cached

    def best(self, core_frac: float, quality: Quality = Quality.EPE) -> CoreGroup:
        """Best neighbourhood of ``round(core_frac * n)`` points.

        Raises:
            NoValidCoreGroupError: If every neighbourhood fails to fit or score.
        """
        k = core_size(self.data.n, core_frac, self.data.d_adjust)
        cached = self._results.get((k, quality))
        if cached is None:
            cached = self._search(k, quality)
            with self._lock:
                self._results[(k, quality)] = cached
        if isinstance(cached, NoValidCoreGroupError):
            raise cached
        return cached

    def release(self) -> None:
        """Drop the neighbour table and cached fits once every user is done."""
        with self._lock:
            self._users -= 1
            if self._users <= 0:
                self._neighbours = None
                self._fits.clear()

    def _search(self, k: int, quality: Quality) -> CoreGroup | NoValidCoreGroupError:
        seen: set[bytes] = set()
        best: CoreGroup | None = None
        skipped = 0
        for center, indices in zip(self.centers, self.neighbourhoods(k)):
            marker = hashlib.blake2b(indices.tobytes(), digest_size=16).digest()
            if marker in seen:
                continue
            seen.add(marker)
            try:
                model = self.fit(indices)
                value = _quality(model, self.data.subset(indices), quality)
            except CoxGroupError:
                skipped += 1
                continue
            better = best is None or (
                value < best.quality if quality.minimize else value > best.quality
            )
            if better:
                rows = np.asarray(indices, dtype=np.int64)
                best = CoreGroup(indices=rows, model=model, quality=value, center=int(center))

        if skipped:
            logger.debug("Core search skipped %d of %d neighbourhoods", skipped, len(seen))
        if best is None:
            return NoValidCoreGroupError(f"all {len(seen)} neighbourhoods of size {k} failed")
        return best


def core_group(
    data: SurvivalDataset,
    core_frac: float,
    quality: Quality = Quality.EPE,
    ridge: float = 0.0,
    max_centers: int | None = None,
) -> CoreGroup:
    """Neighbourhood of ``round(core_frac * n)`` points with the best Cox fit.

    Neighbourhoods are Euclidean k-nearest-neighbour sets (self included) in
    per-feature standardised subgroup space. Identical neighbourhoods are fit
    once. The first best neighbourhood in row order wins.

    Args:
        data: Training data.
        core_frac: Neighbourhood size as a fraction of ``n``.
        quality: EPE (minimised), C-index or log partial likelihood (maximised).
        ridge: Ridge penalty for each fit.
        max_centers: Evaluate only this many centres, chosen with a fixed seed.

    Returns:
        The selected core group.

    Raises:
        NoValidCoreGroupError: If every neighbourhood fails to fit or score.
    """
    return CoreSearch(data, ridge=ridge, max_centers=max_centers).best(core_frac, quality)


def crs_conformity_scores(
    data: SurvivalDataset, core: SurvivalDataset, beta: ArrayLike
) -> FloatArray:
    """Rank tail score of every row of ``data`` against ``core``."""
    tau, _ = RankScorer(beta, core).tail_scores(data.x_adjust, data.times, data.events)
    return tau


def ci_conformity_scores(
    data: SurvivalDataset, core: SurvivalDataset, beta: ArrayLike
) -> FloatArray:
    """Fraction of comparable core points concordant with each row of ``data``.

    Core points failing before ``t*`` should have higher risk than the test
    point; when the test point failed, core points at or after ``t*`` should
    not. A row with no comparable core point scores 1.
    """
    b = np.asarray(beta, dtype=np.float64)
    core = core.sorted()
    eta_core = core.x_adjust @ b
    core_failed = core.events == 1
    eta = data.x_adjust @ b
    delta = data.events == 1
    starts = np.searchsorted(core.times, data.times, side="left")

    positions = np.arange(core.n)
    scores = np.empty(data.n)
    rows = max(1, _BLOCK_CELLS // core.n)
    for lo in range(0, data.n, rows):
        block = slice(lo, lo + rows)
        before = positions[None, :] < starts[block, None]
        earlier = before & core_failed[None, :]
        later = ~before & delta[block, None]
        higher = eta_core[None, :] > eta[block, None]
        agree = np.count_nonzero(earlier & higher, axis=1) + np.count_nonzero(
            later & ~higher, axis=1
        )
        total = np.count_nonzero(earlier, axis=1) + np.count_nonzero(later, axis=1)
        scores[block] = np.where(total > 0, agree / np.maximum(total, 1), 1.0)
    return scores


def pl_conformity_scores(
    data: SurvivalDataset, core: SurvivalDataset, beta: ArrayLike
) -> FloatArray:
    """Partial-likelihood term of each row of ``data`` inserted into ``core``.

    A failed row scores ``e^a / (e^a + sum_{t_i >= t*} e^{eta_i})``. A censored
    row scores the sum of that term over every core failure at or after
    ``t*``, using each failure's own risk set; the core's log suffix sums are
    computed once so each row costs ``O(k)``.
    """
    b = np.asarray(beta, dtype=np.float64)
    core = core.sorted()
    eta_core = core.x_adjust @ b
    log_suffix = np.append(np.logaddexp.accumulate(eta_core[::-1])[::-1], -np.inf)
    log_risk = log_suffix[risk_set_starts(core.times)]
    core_failed = core.events == 1

    a = data.x_adjust @ b
    starts = np.searchsorted(core.times, data.times, side="left")
    scores = np.empty(data.n)

    failed = data.events == 1
    scores[failed] = expit(a[failed] - log_suffix[starts[failed]])

    censored = np.flatnonzero(~failed)
    positions = np.arange(core.n)
    rows = max(1, _BLOCK_CELLS // core.n)
    for lo in range(0, censored.shape[0], rows):
        idx = censored[lo : lo + rows]
        mask = (positions[None, :] >= starts[idx, None]) & core_failed[None, :]
        terms = expit(a[idx, None] - log_risk[None, :])
        scores[idx] = np.sum(terms, axis=1, where=mask)
    return scores


def naive_pl_censored_score(
    core: SurvivalDataset, beta: ArrayLike, x_star: ArrayLike, t_star: float
) -> float:
    """Censored-row partial-likelihood score by direct double summation."""
    b = np.asarray(beta, dtype=np.float64)
    risk = np.exp(core.x_adjust @ b)
    a = float(np.exp(np.asarray(x_star, dtype=np.float64) @ b))
    total = 0.0
    for i in range(core.n):
        if core.events[i] != 1 or core.times[i] < t_star:
            continue
        denominator = a
        for j in range(core.n):
            if core.times[j] >= core.times[i]:
                denominator += risk[j]
        total += a / denominator
    return total


def conformity_scores(
    data: SurvivalDataset, core: SurvivalDataset, beta: ArrayLike, score: ConformityScore
) -> FloatArray:
    """Scores of every row of ``data`` against ``core``; low means non-conforming."""
    if score is ConformityScore.CRS:
        return crs_conformity_scores(data, core, beta)
    if score is ConformityScore.CI:
        return ci_conformity_scores(data, core, beta)
    return pl_conformity_scores(data, core, beta)


def reject_below_quantile(scores: ArrayLike, rej_quantile: float) -> BoolArray:
    """Rows whose score is strictly below the ``rej_quantile`` empirical quantile."""
    if not 0.0 < rej_quantile <= 0.5:
        raise InvalidArgumentError("must lie in (0, 0.5]", "rej_quantile")
    values = np.asarray(scores, dtype=np.float64)
    return values < np.quantile(values, rej_quantile)


def rejection_labels(
    data: SurvivalDataset,
    core_indices: ArrayLike,
    beta: ArrayLike,
    score: ConformityScore,
    rej_quantile: float,
) -> BoolArray:
    """Flag the rows of ``data`` in the bottom ``rej_quantile`` of conformity.

    Every row, core rows included, is scored against the core group.
    """
    core = data.subset(np.asarray(core_indices))
    return reject_below_quantile(conformity_scores(data, core, beta, score), rej_quantile)


def grow_box(
    x_subgp: ArrayLike,
    rejected: ArrayLike,
    bounds: Region,
    center: ArrayLike,
    speeds: ArrayLike | None = None,
) -> Region:
    """Grow a box from ``center`` until each face meets a rejected point.

    Faces are ordered ``(dim 0 lower, dim 0 upper, dim 1 lower, ...)`` and
    ``speeds`` follows that order. The rejected point nearest ``center`` in the
    directed infinity norm over the still-moving faces fixes the face that
    supports it; points beyond that face are discarded and the process
    repeats. Faces never reached stay at ``bounds``. A face with speed ``s``
    moves ``s`` times as far per unit of norm, so the result is the unit-speed
    box on the problem whose half-axes are divided by their speeds.

    Args:
        x_subgp: ``n x d`` subgroup features.
        rejected: Mask of rejected rows.
        bounds: Outer limit of the box.
        center: Starting point, inside ``bounds``.
        speeds: ``2 * d`` positive face speeds; unit speeds when omitted.

    Returns:
        Box whose interior holds no rejected point.

    Raises:
        InvalidArgumentError: If ``center`` is outside ``bounds`` or speeds are invalid.
    """
    x = np.asarray(x_subgp, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    d = x.shape[1]
    c = np.asarray(center, dtype=np.float64).reshape(-1)
    if c.shape[0] != d or bounds.dim != d:
        raise InvalidArgumentError("dimension mismatch", "center")
    if not bool(bounds.contains(c[None, :])[0]):
        raise InvalidArgumentError("must lie inside bounds", "center")
    s = np.ones(2 * d) if speeds is None else np.asarray(speeds, dtype=np.float64).reshape(-1)
    if s.shape[0] != 2 * d or not np.all(s > 0) or not np.all(np.isfinite(s)):
        raise InvalidArgumentError(f"need {2 * d} positive finite values", "speeds")

    y = x[np.asarray(rejected).astype(bool)] - c
    # Column 2j is the lower face of dim j, column 2j+1 the upper face.
    reach = np.empty((y.shape[0], 2 * d))
    reach[:, 0::2] = -y / s[0::2]
    reach[:, 1::2] = y / s[1::2]

    lower = bounds.lower_array.copy()
    upper = bounds.upper_array.copy()
    active = np.ones(2 * d, dtype=bool)
    while reach.shape[0] and active.any():
        faces = np.flatnonzero(active)
        norms = reach[:, faces].max(axis=1)
        nearest = int(np.argmin(norms))
        level = norms[nearest]
        face = int(faces[np.argmax(reach[nearest, faces])])
        dim, upper_side = divmod(face, 2)
        if upper_side:
            upper[dim] = c[dim] + level * s[face]
        else:
            lower[dim] = c[dim] - level * s[face]
        active[face] = False
        reach = reach[reach[:, face] < level]

    lower = np.clip(lower, bounds.lower_array, bounds.upper_array)
    upper = np.clip(upper, bounds.lower_array, bounds.upper_array)
    return Region.from_bounds(lower, np.maximum(lower, upper))


@dataclass(frozen=True, slots=True)
class PreparedDDGroup:
    """Everything a DDGroup run computes before the rejection threshold.

    Attributes:
        variant: DDGroup flavour.
        data: Training data.
        core: Selected core group.
        center: Core-group mean in subgroup space.
        speeds: Face speeds (unit speed in standardised coordinates).
        scores: Conformity score per training row (None without expansion).
    """

    variant: DDGroupVariant
    data: SurvivalDataset
    core: CoreGroup
    center: FloatArray
    speeds: FloatArray
    scores: FloatArray | None

    @property
    def model(self) -> CoxModel:
        return self.core.model

    def core_region(self) -> Region:
        """Bounding box of the core group."""
        return Region.bounding_box(self.data.x_subgp[self.core.indices])

    def rejected(self, rej_quantile: float) -> BoolArray:
        if self.scores is None:
            raise InvalidArgumentError("variant has no rejection phase", "variant")
        return reject_below_quantile(self.scores, rej_quantile)

    def region(self, rej_quantile: float | None = None) -> Region:
        """Final region for one rejection quantile (ignored without expansion)."""
        if self.variant is DDGroupVariant.NO_EXPAND:
            return self.core_region()
        if rej_quantile is None:
            raise InvalidArgumentError("required for this variant", "rej_quantile")
        return grow_box(
            self.data.x_subgp,
            self.rejected(rej_quantile),
            self.data.bounds(),
            self.center,
            self.speeds,
        )


def prepare_ddgroup(
    data: SurvivalDataset,
    core_frac: float,
    variant: DDGroupVariant = DDGroupVariant.CRS,
    ridge: float = 0.0,
    max_centers: int | None = None,
    search: CoreSearch | None = None,
) -> PreparedDDGroup:
    """Select the core group and score every training row against it.

    A shared ``search`` over the same data replaces ``ridge`` and ``max_centers``.

    Raises:
        NoValidCoreGroupError: If no neighbourhood can be fit.
    """
    if search is None:
        search = CoreSearch(data, ridge=ridge, max_centers=max_centers)
    core = search.best(core_frac, variant.quality)
    center = data.x_subgp[core.indices].mean(axis=0)
    _, _, scale = standardize(data.x_subgp)
    speeds = np.repeat(scale, 2)
    score = variant.score
    scores = None
    if score is not None:
        scores = conformity_scores(data, data.subset(core.indices), core.model.beta, score)
    return PreparedDDGroup(variant, data, core, center, speeds, scores)


def ddgroup(
    data: SurvivalDataset,
    core_frac: float,
    rej_quantile: float | None = None,
    variant: DDGroupVariant = DDGroupVariant.CRS,
    ridge: float = 0.0,
    max_centers: int | None = None,
    search: CoreSearch | None = None,
) -> Region:
    """Region found by DDGroup.

    Raises:
        NoValidCoreGroupError: If no neighbourhood can be fit.
    """
    prepared = prepare_ddgroup(
        data, core_frac, variant, ridge=ridge, max_centers=max_centers, search=search
    )
    return prepared.region(rej_quantile)
