"""Axis-aligned boxes over the subgroup-feature space."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from coxgroup.errors import InvalidArgumentError
from coxgroup.types import ArrayLike, BoolArray, FloatArray


@dataclass(frozen=True, slots=True)
class Region:
    """Closed axis-aligned box ``{x : lower[j] <= x[j] <= upper[j]}``.

    Bounds are stored as tuples so regions are hashable and serialize
    without loss. Infinite bounds mark unbounded sides.

    Attributes:
        lower: Lower bound per dimension.
        upper: Upper bound per dimension.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise InvalidArgumentError("lower and upper differ in length", "region")
        if not self.lower:
            raise InvalidArgumentError("region needs at least one dimension", "region")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if math.isnan(lo) or math.isnan(hi):
                raise InvalidArgumentError(f"NaN bound in dimension {j}", "region")
            if lo > hi:
                raise InvalidArgumentError(f"lower > upper in dimension {j}", "region")

    @classmethod
    def from_bounds(cls, lower: ArrayLike, upper: ArrayLike) -> Region:
        """Create a region from array-like bounds."""
        lo = np.atleast_1d(np.asarray(lower, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(upper, dtype=np.float64))
        return cls(lower=tuple(float(v) for v in lo), upper=tuple(float(v) for v in hi))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> Region:
        """Create a region from ``[(lower, upper), ...]`` per dimension."""
        return cls(
            lower=tuple(float(p[0]) for p in pairs),
            upper=tuple(float(p[1]) for p in pairs),
        )

    @classmethod
    def bounding_box(cls, points: ArrayLike) -> Region:
        """Smallest closed box containing every row of ``points``."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.shape[0] == 0:
            raise InvalidArgumentError("cannot bound an empty point set", "points")
        return cls.from_bounds(pts.min(axis=0), pts.max(axis=0))

    @classmethod
    def unbounded(cls, dim: int) -> Region:
        """The whole space in ``dim`` dimensions."""
        return cls(lower=(-math.inf,) * dim, upper=(math.inf,) * dim)

    @property
    def dim(self) -> int:
        """Number of dimensions."""
        return len(self.lower)

    @property
    def lower_array(self) -> FloatArray:
        return np.asarray(self.lower, dtype=np.float64)

    @property
    def upper_array(self) -> FloatArray:
        return np.asarray(self.upper, dtype=np.float64)

    @property
    def center(self) -> FloatArray:
        """Midpoint of the box (only meaningful when bounded)."""
        return (self.lower_array + self.upper_array) / 2.0

    def _check_points(self, points: ArrayLike) -> FloatArray:
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[None, :] if self.dim > 1 or pts.shape[0] == 1 else pts[:, None]
        if pts.shape[1] != self.dim:
            raise InvalidArgumentError(
                f"points have {pts.shape[1]} columns, region has {self.dim}", "points"
            )
        return pts

    def contains(self, points: ArrayLike) -> BoolArray:
        """Closed-box membership mask for each row of ``points``."""
        pts = self._check_points(points)
        return np.all((pts >= self.lower_array) & (pts <= self.upper_array), axis=1)

    def interior_contains(self, points: ArrayLike) -> BoolArray:
        """Open-box (strict interior) membership mask."""
        pts = self._check_points(points)
        return np.all((pts > self.lower_array) & (pts < self.upper_array), axis=1)

    def clip(self, bounds: Region) -> Region:
        """Intersect with ``bounds``; an empty intersection collapses onto its edge."""
        if bounds.dim != self.dim:
            raise InvalidArgumentError("dimension mismatch", "bounds")
        lo = np.clip(self.lower_array, bounds.lower_array, bounds.upper_array)
        hi = np.clip(self.upper_array, bounds.lower_array, bounds.upper_array)
        return Region.from_bounds(lo, np.maximum(lo, hi))

    def volume(self) -> float:
        """Lebesgue volume (``inf`` when any side is unbounded)."""
        return float(np.prod(self.upper_array - self.lower_array))

    def intersection_volume(self, other: Region) -> float:
        """Volume of ``self ∩ other`` (0 when disjoint)."""
        if other.dim != self.dim:
            raise InvalidArgumentError("dimension mismatch", "other")
        lo = np.maximum(self.lower_array, other.lower_array)
        hi = np.minimum(self.upper_array, other.upper_array)
        return float(np.prod(np.clip(hi - lo, 0.0, None)))

    def to_pairs(self) -> list[list[float]]:
        """``[[lower, upper], ...]`` per dimension."""
        return [[lo, hi] for lo, hi in zip(self.lower, self.upper)]
