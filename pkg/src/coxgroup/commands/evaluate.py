"""Evaluate command: score a saved subgroup on a dataset."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from coxgroup.commands.base import CommandContext, SyncCommand
from coxgroup.config import ExperimentConfig
from coxgroup.data import SavedSubgroup, read_subgroup
from coxgroup.errors import InvalidArgumentError, MetricError, ValidationError
from coxgroup.execution import resolve_dataset
from coxgroup.metrics import MetricReport, RegionScore, evaluate_model, region_f1


@dataclass
class EvaluateOptions:
    """Options for evaluate command."""

    subgroup: Path


@dataclass(frozen=True, slots=True)
class EvaluateResult:
    """Scores of a saved subgroup.

    Attributes:
        subgroup: The evaluated subgroup.
        n_in_region: Dataset rows inside the region.
        size_fraction: Share of rows inside the region.
        metrics: Model metrics on those rows (None when undefined).
        region_score: Recovery against the truth, when known.
        error: Why ``metrics`` is missing.
    """

    subgroup: SavedSubgroup
    n_in_region: int
    size_fraction: float
    metrics: MetricReport | None
    region_score: RegionScore | None
    error: str | None = None


class EvaluateCommand(SyncCommand[EvaluateResult]):
    """Score a saved region and its coefficients without refitting."""

    def __init__(self, context: CommandContext, options: EvaluateOptions) -> None:
        super().__init__(context)
        self.options = options

    def validate(self) -> list[str]:
        errors = super().validate()
        if not self.options.subgroup.is_file():
            errors.append(f"Subgroup file not found: {self.options.subgroup}")
        return errors

    def execute(self) -> EvaluateResult:
        errors = self.validate()
        if errors:
            raise ValidationError(errors)
        config = self.context.require_config()
        data, truth = resolve_dataset(config)
        subgroup = read_subgroup(self.options.subgroup)
        if subgroup.region.dim != data.d_subgp:
            raise InvalidArgumentError(
                f"region has {subgroup.region.dim} dimensions, data has {data.d_subgp}",
                "subgroup",
            )
        if len(subgroup.beta) != data.d_adjust:
            raise InvalidArgumentError(
                f"beta has {len(subgroup.beta)} entries, data has {data.d_adjust}", "subgroup"
            )

        inside = data.in_region(subgroup.region)
        count = int(inside.sum())
        metrics = None
        error = None
        if count == 0:
            error = "no rows inside the region"
        else:
            try:
                metrics = evaluate_model(
                    subgroup.beta, data.subset(inside), config.rejection_alpha
                )
            except MetricError as e:
                error = e.message

        score = region_f1(subgroup.region, truth, data.bounds()) if truth is not None else None
        return EvaluateResult(
            subgroup=subgroup,
            n_in_region=count,
            size_fraction=count / data.n,
            metrics=metrics,
            region_score=score,
            error=error,
        )


def evaluate(config: ExperimentConfig, subgroup: Path) -> EvaluateResult:
    """Convenience function to evaluate a saved subgroup."""
    context = CommandContext(config=config)
    return EvaluateCommand(context, EvaluateOptions(subgroup)).execute()
