"""Synthetic survival benchmarks with known ground-truth regions.

Each generator draws from ``numpy.random.default_rng`` streams spawned from
one ``SeedSequence``: stream 0 for features, 1 for failure times, 2 for
censoring times. Identical arguments give byte-identical datasets.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy.optimize import bisect
from scipy.special import expit

from coxgroup.errors import InvalidArgumentError
from coxgroup.survival import Region, SurvivalDataset
from coxgroup.types import ArrayLike, FloatArray


def _streams(seed: int, count: int = 3) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _exponential_times(rng: np.random.Generator, eta: FloatArray) -> FloatArray:
    """Exponential draws with rate ``exp(eta)``."""
    return rng.exponential(size=eta.shape[0]) * np.exp(-eta)


def _check_n(n: int) -> None:
    if n < 1:
        raise InvalidArgumentError("must be at least 1", "n")


def gen_counter(
    n: int = 4000, m: float = 10.0, b: float = 2.0, c: float = 0.4, seed: int = 0
) -> tuple[SurvivalDataset, Region]:
    """One feature on ``[0, 1]`` whose hazard drops by ``e^-b`` from ``x = c`` on.

    The hazard is ``exp(m x)`` below ``c`` and ``exp(m x - b)`` above, so no
    single Cox model fits the whole interval while ``[c, 1]`` is exactly Cox.

    Returns:
        Uncensored dataset and the true region ``[c, 1]``.
    """
    _check_n(n)
    if not 0.0 < c < 1.0:
        raise InvalidArgumentError("must lie in (0, 1)", "c")
    features, failures, _ = _streams(seed)
    x = features.uniform(0.0, 1.0, size=n)
    eta = m * x - b * (x >= c)
    times = _exponential_times(failures, eta)
    data = SurvivalDataset.from_arrays(x[:, None], times)
    return data, Region((c,), (1.0,))


def nonlinear_half_width(d: int) -> float:
    """Half-width of the true cube: it fills one sixth of ``[-1, 1]^d``."""
    return 6.0 ** (-1.0 / d)


def gen_nonlinear(
    n: int = 4000,
    d: int = 2,
    seed: int = 0,
    beta_star: float = 10.0,
    beta_out: float = 0.5,
) -> tuple[SurvivalDataset, Region]:
    """Cox data inside a central cube, a scrambled hazard outside it.

    Inside the cube the rate is ``exp(beta_star * sum(x))``. Outside, the first
    feature is replaced by ``10 sin(100 x_1^2)`` and the rate is
    ``exp(beta_out * sum(x~))``. The baseline hazard is 1 everywhere.

    Returns:
        Uncensored dataset and the true cube.
    """
    _check_n(n)
    if d < 1:
        raise InvalidArgumentError("must be at least 1", "d")
    features, failures, _ = _streams(seed)
    x = features.uniform(-1.0, 1.0, size=(n, d))
    h = nonlinear_half_width(d)
    inside = np.all(np.abs(x) <= h, axis=1)

    warped = x.copy()
    warped[:, 0] = 10.0 * np.sin(100.0 * x[:, 0] ** 2)
    eta = np.where(inside, beta_star * x.sum(axis=1), beta_out * warped.sum(axis=1))
    times = _exponential_times(failures, eta)
    data = SurvivalDataset.from_arrays(x, times)
    return data, Region((-h,) * d, (h,) * d)


def censoring_log_rate(eta: ArrayLike, censor_rate: float) -> float:
    """Log rate of exponential censoring giving the requested censored share.

    With failure rate ``r_i = exp(eta_i)`` and censoring rate ``l``, a row is
    censored with probability ``l / (l + r_i)``; the mean over rows is
    solved for ``log l`` by bisection.

    Raises:
        InvalidArgumentError: If the bracket does not contain a root.
    """
    scores = np.asarray(eta, dtype=np.float64)

    def excess(log_rate: float) -> float:
        return float(np.mean(expit(log_rate - scores))) - censor_rate

    lo = float(scores.min()) - 40.0
    hi = float(scores.max()) + 40.0
    if excess(lo) * excess(hi) > 0:
        raise InvalidArgumentError(
            f"cannot reach a censored share of {censor_rate}", "censor_rate"
        )
    return float(bisect(excess, lo, hi, xtol=1e-12))


def gen_plain_cox(
    n: int,
    beta: ArrayLike,
    bounds: Region | None = None,
    censor_rate: float = 0.0,
    seed: int = 0,
) -> SurvivalDataset:
    """Globally well-specified Cox data with optional exponential censoring.

    Args:
        n: Number of rows.
        beta: True coefficients.
        bounds: Box the features are uniform on; ``[-1, 1]^d`` when omitted.
        censor_rate: Expected censored share in ``[0, 1)``.
        seed: Seed of the generator streams.

    Returns:
        Dataset whose features serve both roles.
    """
    _check_n(n)
    b = np.asarray(beta, dtype=np.float64).reshape(-1)
    if bounds is None:
        bounds = Region((-1.0,) * b.shape[0], (1.0,) * b.shape[0])
    if bounds.dim != b.shape[0]:
        raise InvalidArgumentError("dimension differs from beta", "bounds")
    if not math.isfinite(bounds.volume()):
        raise InvalidArgumentError("must be bounded", "bounds")
    if not 0.0 <= censor_rate < 1.0:
        raise InvalidArgumentError("must lie in [0, 1)", "censor_rate")

    features, failures, censoring = _streams(seed)
    x = features.uniform(bounds.lower_array, bounds.upper_array, size=(n, b.shape[0]))
    eta = x @ b
    times = _exponential_times(failures, eta)
    events = np.ones(n, dtype=np.int64)
    if censor_rate > 0:
        log_rate = censoring_log_rate(eta, censor_rate)
        limits = censoring.exponential(size=n) * math.exp(-log_rate)
        events = (times <= limits).astype(np.int64)
        times = np.minimum(times, limits)
    return SurvivalDataset.from_arrays(x, times, events)


class SynthKind(str, Enum):
    """Synthetic benchmark family."""

    COUNTER = "counter"
    NONLINEAR = "nonlinear"
    PLAIN_COX = "plain_cox"


class SynthSpec(BaseModel):
    """Description of a synthetic dataset, usable inside an experiment config."""

    kind: SynthKind = Field(..., description="Benchmark family")
    n: int = Field(default=4000, ge=1, description="Number of rows")
    d: int = Field(default=2, ge=1, description="Feature dimension")
    seed: int = Field(default=0, description="Generator seed")
    params: dict[str, Any] = Field(default_factory=dict, description="Family-specific parameters")

    @model_validator(mode="after")
    def check_family(self) -> SynthSpec:
        """Enforce each family's own constraints."""
        if self.kind is SynthKind.COUNTER:
            if self.d != 1:
                raise ValueError("counter data has exactly one feature (d = 1)")
            c = float(self.params.get("c", 0.4))
            if not 0.0 < c < 1.0:
                raise ValueError("counter threshold c must lie in (0, 1)")
        if self.kind is SynthKind.PLAIN_COX:
            beta = self.params.get("beta")
            if beta is not None and len(beta) != self.d:
                raise ValueError("plain_cox beta must have d entries")
            rate = float(self.params.get("censor_rate", 0.0))
            if not 0.0 <= rate < 1.0:
                raise ValueError("censor_rate must lie in [0, 1)")
        return self


def generate(spec: SynthSpec) -> tuple[SurvivalDataset, Region | None]:
    """Generate the dataset described by ``spec``.

    Returns:
        The dataset and its true region (None for plain Cox data).
    """
    p = spec.params
    if spec.kind is SynthKind.COUNTER:
        return gen_counter(
            spec.n,
            m=float(p.get("m", 10.0)),
            b=float(p.get("b", 2.0)),
            c=float(p.get("c", 0.4)),
            seed=spec.seed,
        )
    if spec.kind is SynthKind.NONLINEAR:
        return gen_nonlinear(
            spec.n,
            spec.d,
            seed=spec.seed,
            beta_star=float(p.get("beta_star", 10.0)),
            beta_out=float(p.get("beta_out", 0.5)),
        )
    bounds = None
    if "bounds" in p:
        bounds = Region.from_pairs(p["bounds"])
    data = gen_plain_cox(
        spec.n,
        p.get("beta", [1.0] * spec.d),
        bounds=bounds,
        censor_rate=float(p.get("censor_rate", 0.0)),
        seed=spec.seed,
    )
    return data, None
