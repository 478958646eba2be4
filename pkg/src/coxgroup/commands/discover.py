"""Discover command: one method on the whole dataset."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from coxgroup.algorithms import Method, MethodConfig, MethodRunner, parameter_grid
from coxgroup.commands.base import CommandContext, SyncCommand
from coxgroup.config import ExperimentConfig, SelectionRule
from coxgroup.data import SavedSubgroup, write_subgroup
from coxgroup.errors import ValidationError
from coxgroup.execution import RunRecord, resolve_dataset, select_best_f1, select_subgroup
from coxgroup.metrics import region_f1


@dataclass
class DiscoverOptions:
    """Options for discover command.

    Attributes:
        method: Method to run.
        params: A single setting; the whole grid is swept and one result
            selected when None.
        output: Where to save the chosen subgroup as JSON.
    """

    method: Method
    params: dict[str, Any] | None = None
    output: Path | None = None


@dataclass
class DiscoverResult:
    """Outcome of discover."""

    chosen: RunRecord
    records: list[RunRecord] = field(default_factory=list)
    saved_to: Path | None = None


class DiscoverCommand(SyncCommand[DiscoverResult]):
    """Run one method (one setting or its full grid) on every row of the dataset."""

    def __init__(self, context: CommandContext, options: DiscoverOptions) -> None:
        super().__init__(context)
        self.options = options

    def validate(self) -> list[str]:
        """Reject hyperparameter names the method does not take."""
        errors = super().validate()
        if self.options.params is not None:
            expected = set(parameter_grid(self.options.method)[0].params)
            for key in sorted(set(self.options.params) - expected):
                choices = ", ".join(sorted(expected)) or "none"
                errors.append(
                    f"unknown hyperparameter '{key}' for {self.options.method.value}"
                    f" (expected {choices})"
                )
        return errors

    def execute(self) -> DiscoverResult:
        errors = self.validate()
        if errors:
            raise ValidationError(errors)
        config: ExperimentConfig = self.context.require_config()
        data, truth = resolve_dataset(config)
        runner = MethodRunner(data, config.method_options())
        if self.options.params is not None:
            settings = [MethodConfig(self.options.method, dict(self.options.params))]
        else:
            settings = parameter_grid(self.options.method)

        bounds = data.bounds()
        records = []
        for setting in settings:
            record = RunRecord.from_result(runner.run(setting), 0, data.n)
            if truth is not None and record.region is not None:
                score = region_f1(record.region, truth, bounds)
                record = record.with_updates(
                    precision=score.precision, recall=score.recall, f1=score.f1
                )
            records.append(record)

        if len(records) == 1:
            chosen = records[0]
        elif config.selection is SelectionRule.BEST_F1:
            chosen = select_best_f1(records)
        else:
            chosen = select_subgroup(records, config.size_filter)

        saved_to = None
        if self.options.output is not None and chosen.region is not None and chosen.beta:
            write_subgroup(
                SavedSubgroup(chosen.region, chosen.beta, chosen.method, chosen.setting),
                self.options.output,
            )
            saved_to = self.options.output
        return DiscoverResult(chosen=chosen, records=records, saved_to=saved_to)


def discover(
    config: ExperimentConfig,
    method: Method,
    params: dict[str, Any] | None = None,
    output: Path | None = None,
) -> DiscoverResult:
    """Convenience function to run discover."""
    context = CommandContext(config=config)
    return DiscoverCommand(context, DiscoverOptions(method, params, output)).execute()
