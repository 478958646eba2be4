"""Tests for CSV ingestion."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from coxgroup.data import ColumnSpec, load_csv
from coxgroup.errors import BadCellError, EmptyDatasetError, IngestError, MissingColumnError

SPEC = ColumnSpec(
    time_column="time",
    event_column="event",
    adjust_columns=("age", "dose"),
    subgroup_columns=("age",),
)


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "data.csv"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadCsv:
    """Tests for load_csv."""

    def test_roles_and_sorting(self, tmp_path: Path) -> None:
        """Columns land in their roles and rows come back sorted by time."""
        path = write(
            tmp_path,
            "age,dose,time,event,ignored\n"
            "50,1.5,3.0,1,x\n"
            "60,2.5,1.0,0,y\n"
            "70,0.5,2.0,1,z\n",
        )
        data = load_csv(path, SPEC)
        assert data.times.tolist() == [1.0, 2.0, 3.0]
        assert data.events.tolist() == [0, 1, 1]
        assert data.x_adjust.tolist() == [[60.0, 2.5], [70.0, 0.5], [50.0, 1.5]]
        assert data.x_subgp[:, 0].tolist() == [60.0, 70.0, 50.0]
        assert data.row_ids.tolist() == [1, 2, 0]

    def test_whitespace_tolerated(self, tmp_path: Path) -> None:
        """Cells and headers are stripped."""
        path = write(tmp_path, " age , dose,time,event\n 1 ,2, 3 ,1\n")
        data = load_csv(path, SPEC)
        assert data.x_adjust.tolist() == [[1.0, 2.0]]

    def test_missing_column(self, tmp_path: Path) -> None:
        """A configured column absent from the header is named."""
        path = write(tmp_path, "age,time,event\n1,2,1\n")
        with pytest.raises(MissingColumnError) as exc_info:
            load_csv(path, SPEC)
        assert exc_info.value.name == "dose"

    @pytest.mark.parametrize(
        ("row", "column"),
        [
            ("1,2,abc,1", "time"),
            ("1,,3,1", "dose"),
            ("1,2,-1,1", "time"),
            ("1,2,3,2", "event"),
            ("nan,2,3,1", "age"),
        ],
    )
    def test_bad_cell(self, tmp_path: Path, row: str, column: str) -> None:
        """The first unusable cell is reported with its 1-based row."""
        path = write(tmp_path, f"age,dose,time,event\n1,2,3,1\n{row}\n")
        with pytest.raises(BadCellError) as exc_info:
            load_csv(path, SPEC)
        assert exc_info.value.row == 2
        assert exc_info.value.column == column

    def test_header_only(self, tmp_path: Path) -> None:
        """A header without rows is an empty dataset."""
        path = write(tmp_path, "age,dose,time,event\n")
        with pytest.raises(EmptyDatasetError):
            load_csv(path, SPEC)

    def test_empty_file(self, tmp_path: Path) -> None:
        """A zero-byte file is an empty dataset."""
        path = write(tmp_path, "")
        with pytest.raises(EmptyDatasetError):
            load_csv(path, SPEC)

    def test_missing_file(self, tmp_path: Path) -> None:
        """A missing file is an ingest error."""
        with pytest.raises(IngestError, match="File not found"):
            load_csv(tmp_path / "nope.csv", SPEC)

    def test_all_columns_deduplicated(self) -> None:
        """Shared role columns appear once."""
        assert SPEC.all_columns == ["age", "dose", "time", "event"]

    def test_full_precision(self, tmp_path: Path) -> None:
        """Long decimals parse to the nearest double."""
        path = write(tmp_path, "age,dose,time,event\n0.1,0.30000000000000004,1e-3,1\n")
        data = load_csv(path, SPEC)
        np.testing.assert_array_equal(data.x_adjust[0], [0.1, 0.30000000000000004])
