"""Tests for gen command."""

from __future__ import annotations

from pathlib import Path

from coxgroup.commands import CommandContext, GenCommand, GenOptions, gen_dataset
from coxgroup.data import load_csv, read_region
from coxgroup.synth import SynthKind, SynthSpec


class TestGenCommand:
    """Tests for GenCommand."""

    def test_writes_csv_and_sidecar(self, tmp_path: Path) -> None:
        """Families with a truth get a sidecar next to the CSV."""
        spec = SynthSpec(kind=SynthKind.COUNTER, n=120, d=1, seed=4)
        result = gen_dataset(spec, tmp_path / "counter.csv")
        assert result.truth_path == tmp_path / "counter.truth.txt"
        assert read_region(result.truth_path) == result.truth
        data = load_csv(result.data_path, result.columns)
        assert data.n == 120
        assert result.n_events == 120

    def test_custom_truth_path(self, tmp_path: Path) -> None:
        """The sidecar location can be chosen."""
        spec = SynthSpec(kind=SynthKind.NONLINEAR, n=50, d=3)
        options = GenOptions(spec, tmp_path / "d.csv", tmp_path / "meta" / "cube.txt")
        result = GenCommand(CommandContext(), options).execute()
        assert result.truth_path == tmp_path / "meta" / "cube.txt"
        assert result.truth is not None and result.truth.dim == 3
        assert result.columns.adjust_columns == ("x1", "x2", "x3")

    def test_plain_cox_no_sidecar(self, tmp_path: Path) -> None:
        """Plain Cox data has no truth file."""
        spec = SynthSpec(kind=SynthKind.PLAIN_COX, n=60, d=2, params={"censor_rate": 0.3})
        result = gen_dataset(spec, tmp_path / "plain.csv")
        assert result.truth_path is None
        assert not (tmp_path / "plain.truth.txt").exists()
        assert result.n_events < 60
