"""Gen command: write a synthetic dataset and its truth sidecar."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from coxgroup.commands.base import CommandContext, SyncCommand
from coxgroup.data import ColumnSpec, write_dataset_csv, write_region
from coxgroup.survival import Region
from coxgroup.synth import SynthSpec, generate


@dataclass
class GenOptions:
    """Options for gen command."""

    spec: SynthSpec
    output: Path
    truth_output: Path | None = None


@dataclass(frozen=True, slots=True)
class GenResult:
    """Files written by gen."""

    data_path: Path
    truth_path: Path | None
    columns: ColumnSpec
    n: int
    n_events: int
    truth: Region | None


class GenCommand(SyncCommand[GenResult]):
    """Generate a synthetic benchmark and export it as CSV.

    The truth region, when the family has one, goes to a sidecar next to
    the CSV (``<stem>.truth.txt``) unless another path is given.
    """

    def __init__(self, context: CommandContext, options: GenOptions) -> None:
        super().__init__(context)
        self.options = options

    def execute(self) -> GenResult:
        data, truth = generate(self.options.spec)
        columns = write_dataset_csv(data, self.options.output)
        truth_path = None
        if truth is not None:
            truth_path = self.options.truth_output or self.options.output.with_suffix(".truth.txt")
            write_region(truth, truth_path)
        return GenResult(
            data_path=self.options.output,
            truth_path=truth_path,
            columns=columns,
            n=data.n,
            n_events=data.n_events,
            truth=truth,
        )


def gen_dataset(spec: SynthSpec, output: Path, truth_output: Path | None = None) -> GenResult:
    """Convenience function to generate and export a dataset."""
    return GenCommand(CommandContext(), GenOptions(spec, output, truth_output)).execute()
