"""Pydantic models for coxgroup.yaml experiment configuration."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from coxgroup.algorithms import Method, MethodOptions
from coxgroup.data import ColumnSpec, read_region
from coxgroup.survival import Region
from coxgroup.synth import SynthKind, SynthSpec

ALL_METHODS = [m.value for m in Method]


class SelectionRule(str, Enum):
    """How one subgroup per method and replicate is chosen from its sweep."""

    MIN_EPE = "min-epe"
    BEST_F1 = "best-f1"


class ExperimentConfig(BaseModel):
    """A complete experiment: data, methods, protocol and outputs."""

    dataset: Path | None = Field(default=None, description="CSV dataset path")
    synth: SynthSpec | None = Field(default=None, description="Synthetic dataset instead of a CSV")
    time_column: str = Field(default="time", description="Time column name")
    event_column: str = Field(default="event", description="Event indicator column name")
    adjust_columns: list[str] = Field(default_factory=list, description="Cox-model feature columns")
    subgroup_columns: list[str] = Field(
        default_factory=list,
        description="Subgroup feature columns (defaults to the adjust columns)",
    )
    methods: list[Method] = Field(
        default_factory=lambda: [Method(m) for m in ALL_METHODS],
        description="Methods to sweep",
    )
    replicates: int = Field(default=10, ge=1, description="Random train/test splits")
    test_fraction: float = Field(default=0.2, gt=0.0, lt=1.0, description="Test share")
    size_filter: float = Field(
        default=0.1, gt=0.0, lt=1.0, description="Minimum training share of a selected region"
    )
    truth_region: Path | list[tuple[float, float]] | None = Field(
        default=None, description="Ground-truth region: sidecar file or [lower, upper] pairs"
    )
    selection: SelectionRule = Field(default=SelectionRule.MIN_EPE, description="Selection rule")
    seed: int = Field(default=0, description="Master seed")
    output: Path = Field(default=Path("results"), description="Output directory")
    workers: int = Field(default=4, ge=1, description="Concurrent (replicate, method) tasks")
    ridge: float = Field(default=0.0, ge=0.0, description="Ridge penalty for Cox fits")
    core_centers: int | None = Field(
        default=None, ge=1, description="Cap on candidate core-group centres (null = all)"
    )
    tree_thresholds: int | None = Field(
        default=None, ge=1, description="Cap on Cox-tree thresholds per feature (null = all)"
    )
    rejection_alpha: float = Field(
        default=0.1, gt=0.0, lt=1.0, description="Level of the test rejection fraction"
    )

    @field_validator("methods", mode="before")
    @classmethod
    def normalize_methods(cls, v: Any) -> Any:
        """Accept a comma-separated string, values or member names."""
        if isinstance(v, str):
            v = [part for part in v.split(",") if part.strip()]
        if isinstance(v, list):
            return [m if isinstance(m, Method) else Method.parse(str(m)) for m in v]
        return v

    @model_validator(mode="after")
    def validate_config(self) -> ExperimentConfig:
        """Check the cross-field invariants."""
        if (self.dataset is None) == (self.synth is None):
            raise ValueError("exactly one of 'dataset' and 'synth' must be given")
        if not self.methods:
            raise ValueError("at least one method is required")
        if self.dataset is not None:
            if not self.adjust_columns:
                raise ValueError("adjust_columns are required for a CSV dataset")
            if self.time_column == self.event_column:
                raise ValueError("time and event columns must differ")
            features = set(self.adjust_columns) | set(self.subgroup_columns)
            overlap = features & {self.time_column, self.event_column}
            if overlap:
                raise ValueError(f"time/event columns used as features: {sorted(overlap)}")
        if self.selection is SelectionRule.BEST_F1 and not self.has_truth:
            raise ValueError("selection 'best-f1' needs a truth_region")
        return self

    @property
    def has_truth(self) -> bool:
        """Whether a ground-truth region is known."""
        if self.truth_region is not None:
            return True
        return self.synth is not None and self.synth.kind is not SynthKind.PLAIN_COX

    def columns(self) -> ColumnSpec:
        """Column roles for CSV ingestion."""
        subgroup = self.subgroup_columns or self.adjust_columns
        return ColumnSpec(
            time_column=self.time_column,
            event_column=self.event_column,
            adjust_columns=tuple(self.adjust_columns),
            subgroup_columns=tuple(subgroup),
        )

    def explicit_truth(self) -> Region | None:
        """The configured truth region, reading the sidecar file if needed."""
        if self.truth_region is None:
            return None
        if isinstance(self.truth_region, Path):
            return read_region(self.truth_region)
        return Region.from_pairs(self.truth_region)

    def method_options(self) -> MethodOptions:
        """Run options shared by every method."""
        return MethodOptions(
            ridge=self.ridge,
            core_centers=self.core_centers,
            tree_thresholds=self.tree_thresholds,
        )

    @property
    def method_names(self) -> list[str]:
        return [m.value for m in self.methods]
