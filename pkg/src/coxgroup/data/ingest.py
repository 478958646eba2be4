"""CSV ingestion of survival datasets."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from coxgroup.errors import BadCellError, EmptyDatasetError, IngestError, MissingColumnError
from coxgroup.survival import SurvivalDataset
from coxgroup.types import ColumnName, PathLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ColumnSpec:
    """Which CSV columns play which role.

    Attributes:
        time_column: Event or censoring time.
        event_column: Event indicator (1 failure, 0 censored).
        adjust_columns: Cox-model features.
        subgroup_columns: Subgroup-defining features; may overlap ``adjust_columns``.
    """

    time_column: ColumnName
    event_column: ColumnName
    adjust_columns: tuple[ColumnName, ...]
    subgroup_columns: tuple[ColumnName, ...]

    @property
    def all_columns(self) -> list[ColumnName]:
        """Every configured column, each once, in first-use order."""
        names = [*self.adjust_columns, *self.subgroup_columns, self.time_column, self.event_column]
        return list(dict.fromkeys(names))


def _parse_column(frame: pd.DataFrame, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Numeric values of a string column and a mask of unusable cells."""
    raw = frame[name].str.strip()
    values = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=np.float64)
    bad = ~np.isfinite(values)
    return values, bad


def load_csv(path: PathLike, columns: ColumnSpec) -> SurvivalDataset:
    """Read a comma-separated survival dataset with one header row.

    Rows are numbered from 1 (the first row after the header) in
    diagnostics. The result is sorted by time; ``row_ids`` holds each row's
    0-based position in the file.

    Args:
        path: CSV file.
        columns: Column roles.

    Returns:
        The dataset, sorted by time.

    Raises:
        IngestError: If the file cannot be read.
        MissingColumnError: If the header lacks a configured column.
        BadCellError: On the first missing, non-numeric or out-of-range cell.
        EmptyDatasetError: If there are no data rows.
    """
    path = Path(path)
    if not path.is_file():
        raise IngestError("File not found", path=path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError(path) from None
    except (OSError, UnicodeDecodeError, pd.errors.ParserError) as e:
        raise IngestError(f"Failed to parse CSV: {e}", path=path) from e

    frame.columns = [str(c).strip() for c in frame.columns]
    for name in columns.all_columns:
        if name not in frame.columns:
            raise MissingColumnError(name, path=path)
    if frame.empty:
        raise EmptyDatasetError(path)

    parsed: dict[str, np.ndarray] = {}
    invalid: dict[str, np.ndarray] = {}
    for name in columns.all_columns:
        parsed[name], invalid[name] = _parse_column(frame, name)
    times = parsed[columns.time_column]
    events = parsed[columns.event_column]
    invalid[columns.time_column] = invalid[columns.time_column] | (times < 0)
    invalid[columns.event_column] = invalid[columns.event_column] | ~np.isin(events, (0.0, 1.0))

    bad_rows = np.zeros(len(frame), dtype=bool)
    for mask in invalid.values():
        bad_rows |= mask
    if bad_rows.any():
        row = int(np.argmax(bad_rows))
        column = next(name for name in columns.all_columns if invalid[name][row])
        raise BadCellError(row + 1, column, frame[column].iloc[row], path=path)

    data = SurvivalDataset(
        x_adjust=np.column_stack([parsed[c] for c in columns.adjust_columns]),
        x_subgp=np.column_stack([parsed[c] for c in columns.subgroup_columns]),
        times=times,
        events=events.astype(np.int64),
        row_ids=np.arange(len(frame)),
    )
    logger.debug("Loaded %d rows (%d events) from %s", data.n, data.n_events, path)
    return data.sorted()
