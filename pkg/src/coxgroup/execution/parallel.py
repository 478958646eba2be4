"""Concurrent execution of blocking tasks with bounded parallelism."""

from __future__ import annotations

import asyncio
from collections.abc import Callable, Sequence
from typing import TypeVar

T = TypeVar("T")


class ParallelExecutor:
    """Run blocking callables in worker threads, at most ``concurrency`` at once.

    Attributes:
        concurrency: Maximum number of concurrent tasks.
    """

    def __init__(self, concurrency: int = 4) -> None:
        self.concurrency = max(1, concurrency)

    async def execute(self, tasks: Sequence[Callable[[], T]]) -> list[T]:
        """Run every task; results come back in submission order.

        Args:
            tasks: Zero-argument callables.

        Returns:
            One result per task.
        """
        semaphore = asyncio.Semaphore(self.concurrency)

        async def run_one(task: Callable[[], T]) -> T:
            async with semaphore:
                return await asyncio.to_thread(task)

        return list(await asyncio.gather(*(run_one(task) for task in tasks)))
