"""Sweep record models."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field, replace
from typing import Any

from coxgroup.algorithms import SubgroupResult
from coxgroup.survival import Region


@dataclass(frozen=True, slots=True)
class RunRecord:
    """One method setting run on one replicate's training split.

    Test metrics are only filled for the record selected for its
    (method, replicate); they stay None when the test side cannot be scored.

    Attributes:
        method: Method value, e.g. ``"dg"``.
        setting: Readable setting label.
        params: Hyperparameters.
        replicate: Replicate index.
        region: Returned region.
        beta: Coefficients fit on the training points in ``region``.
        train_epe: Training EPE of that fit.
        n_in_region: Training points in ``region``.
        size_fraction: ``n_in_region`` over the training size.
        precision: Volume precision against the truth, when known.
        recall: Volume recall against the truth, when known.
        f1: Volume F1 against the truth, when known.
        test_epe: EPE on test points in ``region``.
        test_c_index: C-index on test points in ``region``.
        test_rejection_fraction: Rejection fraction on test points in ``region``.
        n_test_in_region: Test points in ``region``.
        selected: Whether this record was chosen for its (method, replicate).
        failed: Error tag of a failed run.
    """

    method: str
    setting: str
    params: dict[str, Any]
    replicate: int
    region: Region | None = None
    beta: tuple[float, ...] | None = None
    train_epe: float | None = None
    n_in_region: int = 0
    size_fraction: float = 0.0
    precision: float | None = None
    recall: float | None = None
    f1: float | None = None
    test_epe: float | None = None
    test_c_index: float | None = None
    test_rejection_fraction: float | None = None
    n_test_in_region: int = 0
    selected: bool = False
    failed: str | None = None

    @property
    def success(self) -> bool:
        return self.failed is None

    @classmethod
    def from_result(cls, result: SubgroupResult, replicate: int, n_train: int) -> RunRecord:
        """Record for a method result on a training split of ``n_train`` rows."""
        beta = None if result.beta is None else tuple(float(b) for b in result.beta)
        return cls(
            method=result.config.method.value,
            setting=result.config.label,
            params=dict(result.config.params),
            replicate=replicate,
            region=result.region,
            beta=beta,
            train_epe=result.train_epe,
            n_in_region=result.n_in_region,
            size_fraction=result.n_in_region / n_train if n_train else 0.0,
            failed=result.failed,
        )

    def with_updates(self, **changes: Any) -> RunRecord:
        """Copy with some fields changed."""
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        """Plain mapping in a fixed field order."""
        return {
            "method": self.method,
            "setting": self.setting,
            "params": dict(self.params),
            "replicate": self.replicate,
            "selected": self.selected,
            "failed": self.failed,
            "n_in_region": self.n_in_region,
            "size_fraction": self.size_fraction,
            "train_epe": self.train_epe,
            "test_epe": self.test_epe,
            "test_c_index": self.test_c_index,
            "test_rejection_fraction": self.test_rejection_fraction,
            "n_test_in_region": self.n_test_in_region,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "region": None if self.region is None else self.region.to_pairs(),
            "beta": None if self.beta is None else list(self.beta),
        }


@dataclass(frozen=True, slots=True)
class MissingSelection:
    """A (method, replicate) for which no subgroup could be selected."""

    method: str
    replicate: int
    reason: str


@dataclass
class SweepResult:
    """Every record of a sweep plus the selections that came up empty.

    Attributes:
        records: Records in (replicate, method, grid) order.
        missing: Selections that failed.
    """

    records: list[RunRecord] = field(default_factory=list)
    missing: list[MissingSelection] = field(default_factory=list)

    @property
    def selected(self) -> list[RunRecord]:
        """Selected records, one per (method, replicate) that has one."""
        return [r for r in self.records if r.selected]

    @property
    def success_count(self) -> int:
        return sum(1 for r in self.records if r.success)

    @property
    def failure_count(self) -> int:
        return sum(1 for r in self.records if not r.success)

    def for_method(self, method: str) -> list[RunRecord]:
        return [r for r in self.records if r.method == method]

    def extend(self, other: SweepResult) -> None:
        """Append another result's records and missing selections."""
        self.records.extend(other.records)
        self.missing.extend(other.missing)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[RunRecord]:
        return iter(self.records)
