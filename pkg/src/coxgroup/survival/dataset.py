"""Survival dataset model."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from coxgroup.errors import InvalidArgumentError
from coxgroup.survival.region import Region
from coxgroup.types import ArrayLike, BoolArray, FloatArray, IntArray


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


def _as_matrix(values: ArrayLike, n: int, name: str) -> FloatArray:
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[:, None]
    if matrix.ndim != 2:
        raise InvalidArgumentError("must be a 1-D or 2-D array", name)
    if matrix.shape[0] != n:
        raise InvalidArgumentError(f"has {matrix.shape[0]} rows, expected {n}", name)
    if matrix.shape[1] < 1:
        raise InvalidArgumentError("needs at least one column", name)
    if not np.all(np.isfinite(matrix)):
        raise InvalidArgumentError("contains non-finite values", name)
    return matrix


@dataclass(frozen=True, slots=True)
class SurvivalDataset:
    """Right-censored survival data with separate model and subgroup features.

    Arrays are validated and made read-only on construction. ``sort_index``
    is a stable permutation ordering the rows by non-decreasing time.

    Attributes:
        x_adjust: ``n x d1`` features entering the Cox model.
        x_subgp: ``n x d2`` features that define subgroup regions.
        times: Event or censoring times, non-negative.
        events: 1 for an observed failure, 0 for a censored row.
        row_ids: Identifier of each row in its source (file row, generator index).
    """

    x_adjust: FloatArray
    x_subgp: FloatArray
    times: FloatArray
    events: IntArray
    row_ids: IntArray
    sort_index: IntArray = field(init=False)

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64).reshape(-1)
        n = times.shape[0]
        if n < 1:
            raise InvalidArgumentError("dataset needs at least one row", "times")
        if not np.all(np.isfinite(times)) or np.any(times < 0):
            raise InvalidArgumentError("times must be finite and non-negative", "times")

        raw_events = np.asarray(self.events).reshape(-1)
        if raw_events.shape[0] != n:
            raise InvalidArgumentError(f"has {raw_events.shape[0]} rows, expected {n}", "events")
        if not np.all((raw_events == 0) | (raw_events == 1)):
            raise InvalidArgumentError("values must be 0 or 1", "events")

        row_ids = np.asarray(self.row_ids, dtype=np.int64).reshape(-1)
        if row_ids.shape[0] != n:
            raise InvalidArgumentError(f"has {row_ids.shape[0]} rows, expected {n}", "row_ids")

        object.__setattr__(self, "times", _frozen(times))
        object.__setattr__(self, "events", _frozen(raw_events.astype(np.int64)))
        object.__setattr__(self, "row_ids", _frozen(row_ids))
        object.__setattr__(self, "x_adjust", _frozen(_as_matrix(self.x_adjust, n, "x_adjust")))
        object.__setattr__(self, "x_subgp", _frozen(_as_matrix(self.x_subgp, n, "x_subgp")))
        object.__setattr__(
            self, "sort_index", _frozen(np.argsort(times, kind="stable").astype(np.int64))
        )

    @classmethod
    def from_arrays(
        cls,
        x: ArrayLike,
        times: ArrayLike,
        events: ArrayLike | None = None,
        x_subgp: ArrayLike | None = None,
        row_ids: ArrayLike | None = None,
    ) -> SurvivalDataset:
        """Build a dataset, defaulting to uncensored rows and shared feature roles.

        Args:
            x: Cox-model features.
            times: Event or censoring times.
            events: Event indicators; all ones when omitted.
            x_subgp: Subgroup features; ``x`` when omitted.
            row_ids: Row identifiers; ``0..n-1`` when omitted.

        Returns:
            Validated dataset.
        """
        t = np.asarray(times, dtype=np.float64).reshape(-1)
        n = t.shape[0]
        return cls(
            x_adjust=np.asarray(x, dtype=np.float64),
            x_subgp=np.asarray(x if x_subgp is None else x_subgp, dtype=np.float64),
            times=t,
            events=np.ones(n, dtype=np.int64) if events is None else np.asarray(events),
            row_ids=np.arange(n) if row_ids is None else np.asarray(row_ids),
        )

    @property
    def n(self) -> int:
        """Number of rows."""
        return int(self.times.shape[0])

    @property
    def d_adjust(self) -> int:
        return int(self.x_adjust.shape[1])

    @property
    def d_subgp(self) -> int:
        return int(self.x_subgp.shape[1])

    @property
    def n_events(self) -> int:
        """Number of observed failures."""
        return int(self.events.sum())

    @property
    def is_sorted(self) -> bool:
        """True when rows are already in non-decreasing time order."""
        return bool(np.all(np.diff(self.times) >= 0))

    def __len__(self) -> int:
        return self.n

    def subset(self, rows: ArrayLike) -> SurvivalDataset:
        """Rows selected by an index array or a boolean mask, in the given order."""
        idx = np.asarray(rows)
        if idx.dtype == np.bool_:
            if idx.shape[0] != self.n:
                raise InvalidArgumentError("mask length differs from dataset size", "rows")
            idx = np.flatnonzero(idx)
        idx = idx.astype(np.int64)
        if idx.size == 0:
            raise InvalidArgumentError("subset would be empty", "rows")
        return SurvivalDataset(
            x_adjust=self.x_adjust[idx],
            x_subgp=self.x_subgp[idx],
            times=self.times[idx],
            events=self.events[idx],
            row_ids=self.row_ids[idx],
        )

    def sorted(self) -> SurvivalDataset:
        """Copy in non-decreasing time order (``self`` when already sorted)."""
        if self.is_sorted:
            return self
        return self.subset(self.sort_index)

    def bounds(self) -> Region:
        """Bounding box of the subgroup features."""
        return Region.bounding_box(self.x_subgp)

    def in_region(self, region: Region) -> BoolArray:
        """Mask of rows whose subgroup features lie in ``region``."""
        return region.contains(self.x_subgp)

    def restrict(self, region: Region) -> SurvivalDataset:
        """Rows inside ``region``."""
        return self.subset(self.in_region(region))
