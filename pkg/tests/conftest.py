"""Shared test fixtures for coxgroup tests."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from coxgroup.survival import SurvivalDataset

DatasetFactory = Callable[..., SurvivalDataset]


def _make_dataset(
    rng: np.random.Generator,
    n: int = 30,
    d: int = 2,
    censor: float = 0.3,
    beta: tuple[float, ...] | None = None,
) -> SurvivalDataset:
    x = rng.uniform(-1.0, 1.0, size=(n, d))
    b = np.asarray(beta if beta is not None else np.linspace(1.0, -0.5, d))
    times = rng.exponential(size=n) * np.exp(-(x @ b))
    events = (rng.uniform(size=n) >= censor).astype(int)
    events[0] = 1
    return SurvivalDataset.from_arrays(x, times, events)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def make_data() -> DatasetFactory:
    """Factory for random Cox data: ``make_data(rng, n, d, censor, beta)``.

    Times are exponential with rate ``exp(beta^T x)``, features uniform on
    ``[-1, 1]^d``; each row is censored with probability ``censor`` except
    the first.
    """
    return _make_dataset


@pytest.fixture
def small_data(rng: np.random.Generator) -> SurvivalDataset:
    """30 censored rows with two features."""
    return _make_dataset(rng)


@pytest.fixture
def uncensored_data(rng: np.random.Generator) -> SurvivalDataset:
    """40 uncensored rows with two features."""
    return _make_dataset(rng, n=40, censor=0.0)
