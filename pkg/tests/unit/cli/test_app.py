"""Tests for CLI helpers and commands run in-process."""

from __future__ import annotations

import math
from pathlib import Path

import pytest
import typer
from typer.testing import CliRunner

from coxgroup.cli.app import app, format_region, format_value, parse_comma_list, parse_params
from coxgroup.survival import Region

runner = CliRunner()


class TestParsing:
    """Tests for option parsing helpers."""

    def test_comma_list(self) -> None:
        """Blank parts are dropped."""
        assert parse_comma_list("a, b,,c ") == ["a", "b", "c"]
        assert parse_comma_list(None) is None
        assert parse_comma_list("") is None

    def test_params_yaml_values(self) -> None:
        """Values are read as YAML scalars and lists."""
        params = parse_params(["alpha=0.05", "min_leaf=10", "bounds=[[0, 1]]", "name=x"])
        assert params == {"alpha": 0.05, "min_leaf": 10, "bounds": [[0, 1]], "name": "x"}

    def test_params_missing_equals(self) -> None:
        """Items without '=' are rejected."""
        with pytest.raises(typer.BadParameter):
            parse_params(["alpha"])

    def test_params_empty(self) -> None:
        """No items give an empty mapping."""
        assert parse_params(None) == {}


class TestFormatting:
    """Tests for output formatting."""

    def test_region(self) -> None:
        """Intervals are joined per dimension."""
        region = Region((0.4, -math.inf), (1.0, 2.0))
        assert format_region(region) == "[0.4, 1] x [-inf, 2]"
        assert format_region(None) == "-"

    def test_value(self) -> None:
        """Four significant digits, dash for missing."""
        assert format_value(0.123456) == "0.1235"
        assert format_value(None) == "-"


class TestApp:
    """Tests for commands through CliRunner."""

    def test_version(self) -> None:
        """--version prints the package version."""
        from coxgroup import __version__

        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_gen_counter(self, tmp_path: Path) -> None:
        """gen writes the CSV and the truth sidecar."""
        out = tmp_path / "counter.csv"
        result = runner.invoke(app, ["gen", "counter", "--out", str(out), "--n", "50"])
        assert result.exit_code == 0
        assert out.is_file()
        assert (tmp_path / "counter.truth.txt").is_file()

    def test_gen_unknown_kind(self, tmp_path: Path) -> None:
        """Unknown families exit with status 1."""
        result = runner.invoke(app, ["gen", "spiral", "--out", str(tmp_path / "x.csv")])
        assert result.exit_code == 1

    def test_gen_invalid_params(self, tmp_path: Path) -> None:
        """Family constraint violations exit with status 1."""
        args = ["gen", "counter", "--out", str(tmp_path / "x.csv"), "--d", "2"]
        assert runner.invoke(app, args).exit_code == 1

    def test_discover_unknown_method(self, tmp_path: Path) -> None:
        """Unknown methods exit with status 1."""
        out = tmp_path / "c.csv"
        runner.invoke(app, ["gen", "counter", "--out", str(out), "--n", "50"])
        args = ["discover", "lasso", "-d", str(out), "--adjust-cols", "x1"]
        assert runner.invoke(app, args).exit_code == 1
