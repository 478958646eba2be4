"""Seeded train/test partitions."""

from __future__ import annotations

import numpy as np

from coxgroup.errors import InvalidArgumentError
from coxgroup.survival import SurvivalDataset


def replicate_rng(master_seed: int, replicate: int) -> np.random.Generator:
    """Generator for one replicate, derived from the master seed."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, replicate]))


def train_test_split(
    data: SurvivalDataset, test_fraction: float, rng: np.random.Generator
) -> tuple[SurvivalDataset, SurvivalDataset]:
    """Partition rows by a seeded shuffle; each side keeps the input row order.

    ``round(test_fraction * n)`` rows go to the test side.

    Raises:
        InvalidArgumentError: If either side would be empty.
    """
    if not 0.0 < test_fraction < 1.0:
        raise InvalidArgumentError("must lie in (0, 1)", "test_fraction")
    n_test = int(round(test_fraction * data.n))
    if n_test < 1 or n_test >= data.n:
        raise InvalidArgumentError(
            f"split of {data.n} rows leaves an empty side", "test_fraction"
        )
    test_mask = np.zeros(data.n, dtype=bool)
    test_mask[rng.permutation(data.n)[:n_test]] = True
    return data.subset(~test_mask), data.subset(test_mask)
