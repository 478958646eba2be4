"""Patient rule induction (peeling and pasting) with the EPE as the box quality."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from coxgroup.errors import CoxGroupError, InvalidArgumentError, NoValidRegionError
from coxgroup.metrics import empirical_epe
from coxgroup.survival import CoxModel, Region, SurvivalDataset, fit_cox
from coxgroup.types import BoolArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class _Box:
    region: Region
    inside: BoolArray
    model: CoxModel
    epe: float


class BoxSearch:
    """Scores boxes over one training set, caching a Cox fit per distinct box.

    Peeling trajectories for neighbouring ``beta0`` values share their
    prefix, so a single instance is reused across a PRIM sweep.
    """

    def __init__(self, data: SurvivalDataset, ridge: float = 0.0) -> None:
        self.data = data
        self.ridge = ridge
        self._cache: dict[Region, _Box | None] = {}

    def evaluate(self, region: Region) -> _Box | None:
        """Fit and score the training points in ``region``; None when that fails."""
        if region in self._cache:
            return self._cache[region]
        inside = self.data.in_region(region)
        box: _Box | None = None
        if inside.any():
            group = self.data.subset(inside)
            try:
                model = fit_cox(group, ridge=self.ridge)
                box = _Box(region, inside, model, empirical_epe(model.beta, group))
            except CoxGroupError:
                box = None
        self._cache[region] = box
        return box

    def _peel_candidates(self, box: _Box, alpha: float, min_support: float) -> list[Region]:
        x = self.data.x_subgp[box.inside]
        count = x.shape[0]
        take = max(1, math.ceil(alpha * count))
        out: list[Region] = []
        for j in range(x.shape[1]):
            values = np.sort(x[:, j])
            for side in (0, 1):
                if side == 0:
                    cut = values[take - 1]
                    remaining = values[values > cut]
                else:
                    cut = values[count - take]
                    remaining = values[values < cut]
                if remaining.size == 0 or remaining.size < min_support:
                    continue
                lower = list(box.region.lower)
                upper = list(box.region.upper)
                if side == 0:
                    lower[j] = float(remaining.min())
                else:
                    upper[j] = float(remaining.max())
                out.append(Region(tuple(lower), tuple(upper)))
        return out

    def _paste_candidates(self, box: _Box, alpha: float) -> list[Region]:
        x = self.data.x_subgp
        lo = box.region.lower_array
        hi = box.region.upper_array
        within = (x >= lo) & (x <= hi)
        out: list[Region] = []
        for j in range(x.shape[1]):
            others = np.delete(within, j, axis=1).all(axis=1)
            for side in (0, 1):
                if side == 0:
                    outside = x[others & (x[:, j] < lo[j]), j]
                    if outside.size == 0:
                        continue
                    nearest = np.sort(outside)[::-1]
                else:
                    outside = x[others & (x[:, j] > hi[j]), j]
                    if outside.size == 0:
                        continue
                    nearest = np.sort(outside)
                take = max(1, math.ceil(alpha * outside.size))
                lower = list(box.region.lower)
                upper = list(box.region.upper)
                if side == 0:
                    lower[j] = float(nearest[take - 1])
                else:
                    upper[j] = float(nearest[take - 1])
                out.append(Region(tuple(lower), tuple(upper)))
        return out

    def _best(self, candidates: list[Region]) -> _Box | None:
        best: _Box | None = None
        for region in candidates:
            box = self.evaluate(region)
            if box is not None and (best is None or box.epe < best.epe):
                best = box
        return best

    def run(self, alpha: float, beta0: float) -> Region:
        """Peel, then paste, from the bounding box of the training data.

        Args:
            alpha: Fraction of in-box points removed per peel (and re-admitted per paste).
            beta0: Minimum support as a fraction of the training set.

        Returns:
            Final box.

        Raises:
            NoValidRegionError: If the bounding-box fit fails.
        """
        if not 0.0 < alpha < 1.0:
            raise InvalidArgumentError("must lie in (0, 1)", "alpha")
        min_support = beta0 * self.data.n
        if min_support < 1:
            raise InvalidArgumentError("beta0 * n must be at least 1", "beta0")

        current = self.evaluate(self.data.bounds())
        if current is None:
            raise NoValidRegionError("Cox fit on the full training set failed", method="prim")

        peels = 0
        while True:
            candidate = self._best(self._peel_candidates(current, alpha, min_support))
            if candidate is None or candidate.epe >= current.epe:
                break
            current = candidate
            peels += 1

        pastes = 0
        while True:
            candidate = self._best(self._paste_candidates(current, alpha))
            if candidate is None or candidate.epe >= current.epe:
                break
            current = candidate
            pastes += 1

        logger.debug("PRIM(alpha=%s, beta0=%s): %d peels, %d pastes", alpha, beta0, peels, pastes)
        return current.region


def prim(data: SurvivalDataset, alpha: float, beta0: float, ridge: float = 0.0) -> Region:
    """Box found by EPE-driven peeling and pasting.

    Raises:
        NoValidRegionError: If the bounding-box fit fails.
    """
    return BoxSearch(data, ridge=ridge).run(alpha, beta0)
