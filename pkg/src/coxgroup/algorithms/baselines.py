"""Reference methods: the whole dataset and a random box."""

from __future__ import annotations

import numpy as np

from coxgroup.errors import TooFewPointsError
from coxgroup.survival import Region, SurvivalDataset


def base_method(data: SurvivalDataset) -> Region:
    """Bounding box of every point."""
    return data.bounds()


def random_method(data: SurvivalDataset, seed: int) -> Region:
    """Bounding box of ``2 * d2`` distinct points drawn with ``seed``.

    Raises:
        TooFewPointsError: If ``n < 2 * d2``.
    """
    draws = 2 * data.d_subgp
    if data.n < draws:
        raise TooFewPointsError(
            f"needs at least {draws} points, got {data.n}", method="random"
        )
    rng = np.random.default_rng(seed)
    picked = rng.choice(data.n, size=draws, replace=False)
    return Region.bounding_box(data.x_subgp[picked])
