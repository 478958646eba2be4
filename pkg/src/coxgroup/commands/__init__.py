"""coxgroup commands."""

from coxgroup.commands.base import Command, CommandContext, SyncCommand
from coxgroup.commands.discover import (
    DiscoverCommand,
    DiscoverOptions,
    DiscoverResult,
    discover,
)
from coxgroup.commands.evaluate import (
    EvaluateCommand,
    EvaluateOptions,
    EvaluateResult,
    evaluate,
)
from coxgroup.commands.gen import GenCommand, GenOptions, GenResult, gen_dataset
from coxgroup.commands.sweep import SweepCommand, SweepOutcome, sweep

__all__ = [
    # Base
    "Command",
    "SyncCommand",
    "CommandContext",
    # Gen
    "GenCommand",
    "GenOptions",
    "GenResult",
    "gen_dataset",
    # Discover
    "DiscoverCommand",
    "DiscoverOptions",
    "DiscoverResult",
    "discover",
    # Sweep
    "SweepCommand",
    "SweepOutcome",
    "sweep",
    # Evaluate
    "EvaluateCommand",
    "EvaluateOptions",
    "EvaluateResult",
    "evaluate",
]
