"""Exception hierarchy for coxgroup.

All exceptions inherit from CoxGroupError to allow catching every
coxgroup-related error with a single except clause.
"""

from __future__ import annotations

from pathlib import Path


class CoxGroupError(Exception):
    """Base exception for all coxgroup errors."""

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)


class InvalidArgumentError(CoxGroupError, ValueError):
    """An argument violates an operation's precondition."""

    def __init__(self, message: str, argument: str | None = None) -> None:
        self.argument = argument
        if argument:
            message = f"{argument}: {message}"
        super().__init__(message)


class ConfigurationError(CoxGroupError):
    """Error in an experiment configuration."""

    def __init__(self, message: str, path: Path | None = None) -> None:
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class ValidationError(CoxGroupError):
    """Validation errors, typically multiple issues."""

    def __init__(self, errors: list[str]) -> None:
        self.errors = errors
        message = "Validation failed:\n" + "\n".join(f"  - {e}" for e in errors)
        super().__init__(message)


class FitError(CoxGroupError):
    """A Cox model could not be fit."""

    pass


class InsufficientEventsError(FitError):
    """Too few uncensored events to identify the coefficients."""

    def __init__(self, n_events: int, required: int) -> None:
        self.n_events = n_events
        self.required = required
        super().__init__(
            f"Cox fit needs at least {required} uncensored events, got {n_events}"
        )


class MetricError(CoxGroupError):
    """A metric is undefined on the given data."""

    pass


class NoComparablePairsError(MetricError):
    """No (earlier failure, later unit) pair exists to score."""

    def __init__(self, metric: str) -> None:
        self.metric = metric
        super().__init__(f"{metric}: no comparable pairs in the data")


class GroupTooSmallError(MetricError):
    """The group has fewer points than the metric needs."""

    def __init__(self, size: int, minimum: int = 2) -> None:
        self.size = size
        self.minimum = minimum
        super().__init__(f"Group has {size} points, at least {minimum} required")


class MethodError(CoxGroupError):
    """A subgroup-discovery method failed to return a region."""

    def __init__(self, message: str, method: str | None = None) -> None:
        self.method = method
        if method:
            message = f"[{method}] {message}"
        super().__init__(message)


class TooFewPointsError(MethodError):
    """The dataset is too small for the method."""

    pass


class NoValidLeafError(MethodError):
    """Every tree leaf failed to produce a Cox model."""

    pass


class NoValidRegionError(MethodError):
    """No region with a valid Cox fit could be produced."""

    pass


class NoValidCoreGroupError(MethodError):
    """Every candidate neighbourhood failed to produce a Cox model."""

    pass


class IngestError(CoxGroupError):
    """Error while reading a dataset."""

    def __init__(self, message: str, path: Path | None = None) -> None:
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class MissingColumnError(IngestError):
    """A configured column is absent from the header row."""

    def __init__(self, name: str, path: Path | None = None) -> None:
        self.name = name
        super().__init__(f"Missing column '{name}'", path=path)


class BadCellError(IngestError):
    """A configured cell is empty or not a valid number."""

    def __init__(
        self,
        row: int,
        column: str,
        value: str | None = None,
        path: Path | None = None,
    ) -> None:
        self.row = row
        self.column = column
        self.value = value
        message = f"Row {row}, column '{column}': invalid value"
        if value is not None:
            message += f" {value!r}"
        super().__init__(message, path=path)


class EmptyDatasetError(IngestError):
    """The file holds no usable rows."""

    def __init__(self, path: Path | None = None) -> None:
        super().__init__("No usable rows", path=path)


class SelectError(CoxGroupError):
    """Subgroup selection failed."""

    pass


class NoEligibleSubgroupError(SelectError):
    """Every record was failed or below the size filter."""

    def __init__(self, method: str, replicate: int | None = None) -> None:
        self.method = method
        self.replicate = replicate
        message = f"No eligible subgroup for method '{method}'"
        if replicate is not None:
            message += f" (replicate {replicate})"
        super().__init__(message)


class OutputError(CoxGroupError):
    """Writing a result file failed."""

    def __init__(self, message: str, path: Path | None = None) -> None:
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
