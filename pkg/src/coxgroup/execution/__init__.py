"""Sweep execution: records, selection and the parallel protocol runner."""

from coxgroup.execution.parallel import ParallelExecutor
from coxgroup.execution.records import MissingSelection, RunRecord, SweepResult
from coxgroup.execution.selection import select_best_f1, select_subgroup
from coxgroup.execution.sweep import (
    SweepPlan,
    SweepTask,
    evaluate_on_test,
    plan_sweep,
    resolve_dataset,
    run_sweep,
    run_sweep_async,
    run_task,
    shared_core_search,
)

__all__ = [
    # Records
    "RunRecord",
    "SweepResult",
    "MissingSelection",
    # Execution
    "ParallelExecutor",
    # Selection
    "select_subgroup",
    "select_best_f1",
    # Protocol
    "SweepTask",
    "SweepPlan",
    "resolve_dataset",
    "plan_sweep",
    "shared_core_search",
    "run_task",
    "evaluate_on_test",
    "run_sweep",
    "run_sweep_async",
]
