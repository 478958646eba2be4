"""Tests for errors module."""

from __future__ import annotations

from pathlib import Path

from coxgroup.errors import (
    BadCellError,
    ConfigurationError,
    CoxGroupError,
    EmptyDatasetError,
    FitError,
    IngestError,
    InsufficientEventsError,
    InvalidArgumentError,
    MethodError,
    MetricError,
    MissingColumnError,
    NoComparablePairsError,
    NoEligibleSubgroupError,
    NoValidCoreGroupError,
    OutputError,
    SelectError,
    TooFewPointsError,
    ValidationError,
)


class TestCoxGroupError:
    """Tests for base CoxGroupError."""

    def test_message_attribute(self) -> None:
        """Error has message attribute."""
        error = CoxGroupError("test message")
        assert error.message == "test message"
        assert str(error) == "test message"

    def test_inheritance(self) -> None:
        """Every error is a CoxGroupError."""
        for error in (
            FitError("x"),
            MetricError("x"),
            MethodError("x"),
            IngestError("x"),
            SelectError("x"),
            OutputError("x"),
        ):
            assert isinstance(error, CoxGroupError)


class TestInvalidArgumentError:
    """Tests for InvalidArgumentError."""

    def test_with_argument(self) -> None:
        """The argument prefixes the message."""
        error = InvalidArgumentError("must be positive", "ridge")
        assert error.argument == "ridge"
        assert error.message == "ridge: must be positive"

    def test_is_value_error(self) -> None:
        """Can be caught as ValueError."""
        assert isinstance(InvalidArgumentError("bad"), ValueError)


class TestConfigurationError:
    """Tests for ConfigurationError."""

    def test_with_path(self, tmp_path: Path) -> None:
        """Error with path includes it in message."""
        path = tmp_path / "coxgroup.yaml"
        error = ConfigurationError("bad value", path=path)
        assert error.path == path
        assert str(path) in error.message


class TestFitErrors:
    """Tests for Cox fit errors."""

    def test_insufficient_events(self) -> None:
        """Counts are kept and reported."""
        error = InsufficientEventsError(1, 3)
        assert isinstance(error, FitError)
        assert error.n_events == 1
        assert error.required == 3
        assert "3" in error.message


class TestMetricErrors:
    """Tests for metric errors."""

    def test_no_comparable_pairs(self) -> None:
        """The metric is named."""
        error = NoComparablePairsError("c-index")
        assert isinstance(error, MetricError)
        assert error.message.startswith("c-index")


class TestMethodErrors:
    """Tests for method errors."""

    def test_method_tag(self) -> None:
        """The method prefixes the message."""
        error = TooFewPointsError("only 3 points", method="random")
        assert error.message == "[random] only 3 points"
        assert isinstance(NoValidCoreGroupError("x"), MethodError)


class TestIngestErrors:
    """Tests for ingestion errors."""

    def test_missing_column(self) -> None:
        """Column name is kept."""
        error = MissingColumnError("age")
        assert error.name == "age"
        assert "'age'" in error.message

    def test_bad_cell(self, tmp_path: Path) -> None:
        """Row, column and value are reported."""
        error = BadCellError(4, "time", "abc", path=tmp_path / "d.csv")
        assert error.row == 4
        assert "Row 4, column 'time'" in error.message
        assert "'abc'" in error.message
        assert isinstance(error, IngestError)

    def test_empty(self) -> None:
        """Empty datasets are ingest errors."""
        assert isinstance(EmptyDatasetError(), IngestError)


class TestSelectErrors:
    """Tests for selection errors."""

    def test_replicate_in_message(self) -> None:
        """Replicate is named when known."""
        error = NoEligibleSubgroupError("prim", 3)
        assert error.message == "No eligible subgroup for method 'prim' (replicate 3)"
        assert NoEligibleSubgroupError("prim").replicate is None


class TestValidationError:
    """Tests for ValidationError."""

    def test_lists_errors(self) -> None:
        """Each issue is listed."""
        error = ValidationError(["a", "b"])
        assert error.errors == ["a", "b"]
        assert "  - a" in error.message
