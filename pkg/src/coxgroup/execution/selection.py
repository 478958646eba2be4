"""Choosing one subgroup per (method, replicate) from its sweep."""

from __future__ import annotations

from collections.abc import Sequence

from coxgroup.errors import NoEligibleSubgroupError
from coxgroup.execution.records import RunRecord


def _identity(records: Sequence[RunRecord]) -> tuple[str, int | None]:
    if not records:
        return "unknown", None
    return records[0].method, records[0].replicate


def select_subgroup(records: Sequence[RunRecord], size_filter: float) -> RunRecord:
    """Lowest training EPE among successful records covering ``size_filter`` of the data.

    Ties go to the earliest record.

    Raises:
        NoEligibleSubgroupError: If every record is failed or too small.
    """
    best: RunRecord | None = None
    for record in records:
        if not record.success or record.train_epe is None:
            continue
        if record.size_fraction < size_filter:
            continue
        if best is None or record.train_epe < best.train_epe:  # type: ignore[operator]
            best = record
    if best is None:
        raise NoEligibleSubgroupError(*_identity(records))
    return best


def select_best_f1(records: Sequence[RunRecord]) -> RunRecord:
    """Highest-F1 successful record; ties go to the earliest. No size filter applies.

    Raises:
        NoEligibleSubgroupError: If no successful record has an F1 score.
    """
    best: RunRecord | None = None
    for record in records:
        if not record.success or record.f1 is None:
            continue
        if best is None or record.f1 > best.f1:  # type: ignore[operator]
            best = record
    if best is None:
        raise NoEligibleSubgroupError(*_identity(records))
    return best
