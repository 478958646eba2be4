"""Base command infrastructure."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Generic, TypeVar

from coxgroup.config import ExperimentConfig
from coxgroup.errors import ValidationError

TResult = TypeVar("TResult")


@dataclass
class CommandContext:
    """Context passed to all commands.

    Attributes:
        config: Experiment configuration, when the command needs one.
        verbose: If True, show detailed output.
    """

    config: ExperimentConfig | None = None
    verbose: bool = False

    def require_config(self) -> ExperimentConfig:
        if self.config is None:
            raise ValidationError(["this command needs an experiment configuration"])
        return self.config


class Command(ABC, Generic[TResult]):
    """Base class for asynchronous coxgroup commands."""

    def __init__(self, context: CommandContext) -> None:
        self.context = context

    @abstractmethod
    async def execute(self) -> TResult:
        """Execute the command."""
        ...

    def validate(self) -> list[str]:
        """Problems that prevent execution (empty if valid)."""
        return []


class SyncCommand(ABC, Generic[TResult]):
    """Base class for synchronous commands."""

    def __init__(self, context: CommandContext) -> None:
        self.context = context

    @abstractmethod
    def execute(self) -> TResult:
        """Execute the command synchronously."""
        ...

    def validate(self) -> list[str]:
        """Problems that prevent execution (empty if valid)."""
        return []
