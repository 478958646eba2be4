"""Sweep command: the full replicate x method x grid protocol."""

from __future__ import annotations

from dataclasses import dataclass

from coxgroup.commands.base import Command, CommandContext
from coxgroup.config import ExperimentConfig
from coxgroup.execution import SweepResult, resolve_dataset, run_sweep_async
from coxgroup.report import Report, aggregate_and_emit


@dataclass(frozen=True, slots=True)
class SweepOutcome:
    """Sweep records and the emitted report."""

    result: SweepResult
    report: Report


class SweepCommand(Command[SweepOutcome]):
    """Run every configured method over every replicate and write the report."""

    def __init__(self, context: CommandContext) -> None:
        super().__init__(context)

    async def execute(self) -> SweepOutcome:
        config = self.context.require_config()
        data, truth = resolve_dataset(config)
        result = await run_sweep_async(config, data, truth)
        report = aggregate_and_emit(
            result,
            config.output,
            methods=config.method_names,
            with_truth=truth is not None,
        )
        return SweepOutcome(result=result, report=report)


async def sweep(config: ExperimentConfig) -> SweepOutcome:
    """Convenience function to run a sweep."""
    return await SweepCommand(CommandContext(config=config)).execute()
