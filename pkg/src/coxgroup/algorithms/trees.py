"""Survival trees split by log-rank and Cox trees split by child EPE.

Trees are grown lazily: a node is only split when a traversal asks for
leaves below its depth, and every split and leaf fit is cached, so one tree
serves every ``max_depth`` of a sweep.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from coxgroup.errors import CoxGroupError, InvalidArgumentError, NoValidLeafError
from coxgroup.metrics import empirical_epe
from coxgroup.survival import CoxModel, Region, SurvivalDataset, fit_cox
from coxgroup.types import ArrayLike, BoolArray, FloatArray, IntArray

logger = logging.getLogger(__name__)

_BLOCK_CELLS = 2_000_000


class SplitRule(str, Enum):
    """How candidate splits are scored."""

    LOGRANK = "logrank"
    EPE = "epe"


@dataclass(frozen=True, slots=True)
class Split:
    """Chosen split: ``x[feature] <= threshold`` goes left."""

    feature: int
    threshold: float
    score: float


@dataclass(frozen=True, slots=True)
class TreeLeaf:
    """A fitted leaf.

    Attributes:
        region: Leaf box (split half-spaces intersected with the data bounds).
        model: Cox model fit on the leaf's points.
        train_epe: EPE of ``model`` on the leaf's points.
        size: Number of points in the leaf.
    """

    region: Region
    model: CoxModel
    train_epe: float
    size: int


def logrank_statistic(times: ArrayLike, events: ArrayLike, group: ArrayLike) -> float:
    """Two-sample log-rank chi-square statistic of ``group`` against the rest.

    Returns:
        ``(O - E)^2 / V`` over distinct failure times; 0 when ``V = 0``.
    """
    t = np.asarray(times, dtype=np.float64)
    e = np.asarray(events).astype(bool)
    g = np.asarray(group).astype(bool)
    observed = expected = variance = 0.0
    for u in np.unique(t[e]):
        at_risk = t >= u
        n = at_risk.sum()
        n_g = (at_risk & g).sum()
        dead = e & (t == u)
        d = dead.sum()
        observed += (dead & g).sum()
        expected += n_g * d / n
        if n > 1:
            variance += n_g * (n - n_g) * d * (n - d) / (n * n * (n - 1))
    if variance <= 0:
        return 0.0
    return float((observed - expected) ** 2 / variance)


def _candidate_positions(sorted_x: FloatArray, min_leaf: int) -> IntArray:
    """Left-child sizes ``p`` that fall between distinct values and respect ``min_leaf``."""
    m = sorted_x.shape[0]
    p = np.arange(min_leaf, m - min_leaf + 1)
    if p.size == 0:
        return p
    return p[sorted_x[p - 1] < sorted_x[p]]


def logrank_split_scan(
    x: ArrayLike, times: ArrayLike, events: ArrayLike, min_leaf: int
) -> tuple[FloatArray, FloatArray]:
    """Log-rank statistic of every admissible threshold on one feature.

    Args:
        x: Feature values.
        times: Event or censoring times.
        events: Event indicators.
        min_leaf: Minimum size of each child.

    Returns:
        Tuple of ``(thresholds, chi2)`` in increasing threshold order.
    """
    x = np.asarray(x, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    t = np.asarray(times, dtype=np.float64)[order]
    e = np.asarray(events)[order].astype(bool)

    positions = _candidate_positions(xs, min_leaf)
    thresholds = (xs[positions - 1] + xs[positions]) / 2.0 if positions.size else np.empty(0)
    event_times = np.unique(t[e])
    if positions.size == 0 or event_times.size == 0:
        return thresholds, np.zeros(positions.shape[0])

    n_times = event_times.shape[0]
    at_risk = (t.shape[0] - np.searchsorted(np.sort(t), event_times, side="left")).astype(float)
    deaths = np.bincount(np.searchsorted(event_times, t[e]), minlength=n_times).astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        weight = np.where(
            at_risk > 1, deaths * (at_risk - deaths) / (at_risk**2 * (at_risk - 1)), 0.0
        )

    # Each point is at risk at the first ``reach[i]`` failure times.
    reach = np.searchsorted(event_times, t, side="right")
    hazard = np.concatenate([[0.0], np.cumsum(deaths / at_risk)])
    observed = np.cumsum(e)[positions - 1]
    expected = np.cumsum(hazard[reach])[positions - 1]

    variance = np.empty(positions.shape[0])
    columns = np.arange(n_times)
    running = np.zeros(n_times)
    rows = max(1, _BLOCK_CELLS // n_times)
    for lo in range(0, t.shape[0], rows):
        hi = min(lo + rows, t.shape[0])
        n_left = running + np.cumsum(columns[None, :] < reach[lo:hi, None], axis=0)
        running = n_left[-1]
        wanted = (positions > lo) & (positions <= hi)
        if wanted.any():
            block = n_left[positions[wanted] - lo - 1]
            variance[wanted] = (weight * block * (at_risk - block)).sum(axis=1)

    chi2 = np.zeros(positions.shape[0])
    ok = variance > 0
    chi2[ok] = (observed[ok] - expected[ok]) ** 2 / variance[ok]
    return thresholds, chi2


class TreeNode:
    """Node of a subgroup tree."""

    __slots__ = ("indices", "region", "depth", "split", "left", "right", "expanded", "fit")

    def __init__(self, indices: IntArray, region: Region, depth: int) -> None:
        self.indices = indices
        self.region = region
        self.depth = depth
        self.split: Split | None = None
        self.left: TreeNode | None = None
        self.right: TreeNode | None = None
        self.expanded = False
        self.fit: tuple[CoxModel, float] | None | bool = False

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])

    @property
    def is_leaf(self) -> bool:
        return self.left is None


class SubgroupTree:
    """Binary partition of subgroup-feature space.

    Args:
        data: Training data.
        rule: Split criterion.
        min_leaf: Minimum points per child.
        ridge: Ridge penalty for leaf and child fits.
        max_thresholds: Cap on thresholds per feature for the EPE rule.
    """

    def __init__(
        self,
        data: SurvivalDataset,
        rule: SplitRule,
        min_leaf: int,
        ridge: float = 0.0,
        max_thresholds: int | None = None,
    ) -> None:
        if min_leaf < 1:
            raise InvalidArgumentError("must be at least 1", "min_leaf")
        self.data = data
        self.rule = rule
        self.min_leaf = min_leaf
        self.ridge = ridge
        self.max_thresholds = max_thresholds
        self.root = TreeNode(np.arange(data.n), data.bounds(), 0)

    def node_fit(self, node: TreeNode) -> tuple[CoxModel, float] | None:
        """Cox model and EPE on the node's points, or None when either fails."""
        if node.fit is False:
            node.fit = self._fit(node.indices)
        return node.fit  # type: ignore[return-value]

    def _fit(self, indices: IntArray) -> tuple[CoxModel, float] | None:
        group = self.data.subset(indices)
        try:
            model = fit_cox(group, ridge=self.ridge)
            return model, empirical_epe(model.beta, group)
        except CoxGroupError as e:
            logger.debug("Tree fit on %d points failed: %s", group.n, e.message)
            return None

    def _expand(self, node: TreeNode) -> None:
        if node.expanded:
            return
        node.expanded = True
        if node.size < 2 * self.min_leaf:
            return
        split = self._best_split(node)
        if split is None:
            return
        goes_left = self.data.x_subgp[node.indices, split.feature] <= split.threshold
        upper = list(node.region.upper)
        lower = list(node.region.lower)
        upper[split.feature] = split.threshold
        lower[split.feature] = split.threshold
        node.split = split
        node.left = TreeNode(
            node.indices[goes_left],
            Region(node.region.lower, tuple(upper)),
            node.depth + 1,
        )
        node.right = TreeNode(
            node.indices[~goes_left],
            Region(tuple(lower), node.region.upper),
            node.depth + 1,
        )

    def _best_split(self, node: TreeNode) -> Split | None:
        if self.rule is SplitRule.LOGRANK:
            return self._best_logrank_split(node)
        return self._best_epe_split(node)

    def _best_logrank_split(self, node: TreeNode) -> Split | None:
        best: Split | None = None
        times = self.data.times[node.indices]
        events = self.data.events[node.indices]
        for j in range(self.data.d_subgp):
            x = self.data.x_subgp[node.indices, j]
            thresholds, chi2 = logrank_split_scan(x, times, events, self.min_leaf)
            if chi2.size == 0:
                continue
            k = int(np.argmax(chi2))
            if chi2[k] > 0 and (best is None or chi2[k] > best.score):
                best = Split(j, float(thresholds[k]), float(chi2[k]))
        return best

    def _best_epe_split(self, node: TreeNode) -> Split | None:
        parent = self.node_fit(node)
        if parent is None:
            return None
        best: Split | None = None
        best_impurity = parent[1]
        for j in range(self.data.d_subgp):
            x = self.data.x_subgp[node.indices, j]
            order = np.argsort(x, kind="stable")
            xs = x[order]
            positions = _candidate_positions(xs, self.min_leaf)
            if self.max_thresholds is not None and positions.size > self.max_thresholds:
                picks = np.linspace(0, positions.size - 1, self.max_thresholds)
                positions = positions[np.unique(np.round(picks).astype(int))]
            for p in positions:
                left = self._fit(node.indices[order[:p]])
                right = self._fit(node.indices[order[p:]]) if left is not None else None
                if left is None or right is None:
                    continue
                impurity = (p * left[1] + (node.size - p) * right[1]) / node.size
                if impurity < best_impurity:
                    best_impurity = impurity
                    best = Split(j, float((xs[p - 1] + xs[p]) / 2.0), float(impurity))
        return best

    def leaf_nodes(self, max_depth: int) -> list[TreeNode]:
        """Leaves of the tree truncated at ``max_depth``, left to right."""
        if max_depth < 0:
            raise InvalidArgumentError("must be non-negative", "max_depth")
        out: list[TreeNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.depth < max_depth:
                self._expand(node)
            if node.depth < max_depth and not node.is_leaf:
                stack.append(node.right)  # type: ignore[arg-type]
                stack.append(node.left)  # type: ignore[arg-type]
            else:
                out.append(node)
        return out

    def leaves(self, max_depth: int) -> list[TreeLeaf]:
        """Leaves at ``max_depth`` whose Cox fit and EPE succeed.

        Raises:
            NoValidLeafError: If no leaf can be fit.
        """
        fitted: list[TreeLeaf] = []
        for node in self.leaf_nodes(max_depth):
            result = self.node_fit(node)
            if result is None:
                continue
            fitted.append(TreeLeaf(node.region, result[0], result[1], node.size))
        if not fitted:
            raise NoValidLeafError("no leaf produced a Cox model", method=self.rule.value)
        return fitted

    def leaf_membership(self, max_depth: int) -> BoolArray:
        """``(n_leaves, n)`` mask of which training rows each leaf holds."""
        nodes = self.leaf_nodes(max_depth)
        mask = np.zeros((len(nodes), self.data.n), dtype=bool)
        for k, node in enumerate(nodes):
            mask[k, node.indices] = True
        return mask


def best_leaf(leaves: list[TreeLeaf]) -> TreeLeaf:
    """Leaf with the lowest training EPE (first on ties)."""
    return min(leaves, key=lambda leaf: leaf.train_epe)


def survival_tree(
    data: SurvivalDataset, max_depth: int, min_leaf: int, ridge: float = 0.0
) -> list[TreeLeaf]:
    """Grow a log-rank survival tree and fit a Cox model in every leaf.

    Raises:
        NoValidLeafError: If no leaf can be fit.
    """
    return SubgroupTree(data, SplitRule.LOGRANK, min_leaf, ridge=ridge).leaves(max_depth)


def cox_tree(
    data: SurvivalDataset,
    max_depth: int,
    min_leaf: int,
    ridge: float = 0.0,
    max_thresholds: int | None = None,
) -> list[TreeLeaf]:
    """Grow a Cox tree whose splits minimise the size-weighted child EPE.

    Raises:
        NoValidLeafError: If no leaf can be fit.
    """
    tree = SubgroupTree(data, SplitRule.EPE, min_leaf, ridge=ridge, max_thresholds=max_thresholds)
    return tree.leaves(max_depth)
