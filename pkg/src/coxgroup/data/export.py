"""Writers for synthetic datasets and ground-truth region sidecars."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from coxgroup.data.ingest import ColumnSpec
from coxgroup.errors import IngestError
from coxgroup.survival import Region, SurvivalDataset
from coxgroup.types import PathLike


def write_dataset_csv(
    data: SurvivalDataset,
    path: PathLike,
    time_column: str = "time",
    event_column: str = "event",
) -> ColumnSpec:
    """Write ``data`` as CSV in its current row order.

    Shared feature roles are written once as ``x1..xd``; otherwise model
    features are ``a1..`` and subgroup features ``s1..``. Values keep full
    precision so re-reading reproduces them exactly.

    Returns:
        The column roles to read the file back with.
    """
    shared = data.x_adjust.shape == data.x_subgp.shape and np.array_equal(
        data.x_adjust, data.x_subgp
    )
    columns: dict[str, np.ndarray] = {}
    if shared:
        adjust = tuple(f"x{j + 1}" for j in range(data.d_adjust))
        subgroup = adjust
        for j, name in enumerate(adjust):
            columns[name] = data.x_adjust[:, j]
    else:
        adjust = tuple(f"a{j + 1}" for j in range(data.d_adjust))
        subgroup = tuple(f"s{j + 1}" for j in range(data.d_subgp))
        for j, name in enumerate(adjust):
            columns[name] = data.x_adjust[:, j]
        for j, name in enumerate(subgroup):
            columns[name] = data.x_subgp[:, j]
    columns[time_column] = data.times
    columns[event_column] = data.events

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(columns).to_csv(path, index=False, float_format="%.17g")
    return ColumnSpec(
        time_column=time_column,
        event_column=event_column,
        adjust_columns=adjust,
        subgroup_columns=subgroup,
    )


def _format_bound(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _json_bound(value: float) -> float | str:
    return _format_bound(value) if math.isinf(value) else float(value)


def write_region(region: Region, path: PathLike) -> None:
    """Write ``region`` as one ``lower upper`` line per dimension."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{_format_bound(lo)} {_format_bound(hi)}" for lo, hi in region.to_pairs()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_region(path: PathLike) -> Region:
    """Read a ``lower upper`` per-line region file; blank lines are ignored.

    Raises:
        IngestError: If the file is missing or a line is malformed.
    """
    path = Path(path)
    if not path.is_file():
        raise IngestError("File not found", path=path)
    pairs: list[tuple[float, float]] = []
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError(line)
            lower, upper = float(parts[0]), float(parts[1])
        except ValueError:
            raise IngestError(f"Line {number}: expected 'lower upper'", path=path) from None
        pairs.append((lower, upper))
    if not pairs:
        raise IngestError("Region file is empty", path=path)
    try:
        return Region.from_pairs(pairs)
    except ValueError as e:
        raise IngestError(str(e), path=path) from e


@dataclass(frozen=True, slots=True)
class SavedSubgroup:
    """A discovered region with the coefficients fit inside it.

    Attributes:
        region: The region.
        beta: Cox coefficients.
        method: Method that found it.
        setting: Setting label.
    """

    region: Region
    beta: tuple[float, ...]
    method: str = ""
    setting: str = ""


def write_subgroup(subgroup: SavedSubgroup, path: PathLike) -> None:
    """Write a subgroup as JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "method": subgroup.method,
        "setting": subgroup.setting,
        "region": [[_json_bound(lo), _json_bound(hi)] for lo, hi in subgroup.region.to_pairs()],
        "beta": list(subgroup.beta),
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def read_subgroup(path: PathLike) -> SavedSubgroup:
    """Read a subgroup written by :func:`write_subgroup`.

    Raises:
        IngestError: If the file is missing or malformed.
    """
    path = Path(path)
    if not path.is_file():
        raise IngestError("File not found", path=path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        region = Region.from_pairs([[float(lo), float(hi)] for lo, hi in payload["region"]])
        beta = tuple(float(b) for b in payload["beta"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise IngestError(f"Malformed subgroup file: {e}", path=path) from e
    return SavedSubgroup(
        region=region,
        beta=beta,
        method=str(payload.get("method", "")),
        setting=str(payload.get("setting", "")),
    )
