"""The experiment protocol: replicates x methods x hyperparameter grids.

For every replicate the data are split by a seeded shuffle. Each method's
whole grid runs on the training side as one task, one subgroup is selected
from it, and only that subgroup is scored on the test side with its
training-fit coefficients.
"""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Sequence
from dataclasses import dataclass

from coxgroup.algorithms import (
    CoreSearch,
    DDGroupVariant,
    Method,
    MethodOptions,
    MethodRunner,
    Quality,
    parameter_grid,
)
from coxgroup.config import ExperimentConfig, SelectionRule
from coxgroup.data import load_csv, replicate_rng, train_test_split
from coxgroup.errors import ConfigurationError, CoxGroupError, MetricError, SelectError
from coxgroup.execution.parallel import ParallelExecutor
from coxgroup.execution.records import MissingSelection, RunRecord, SweepResult
from coxgroup.execution.selection import select_best_f1, select_subgroup
from coxgroup.metrics import evaluate_model, region_f1
from coxgroup.survival import Region, SurvivalDataset
from coxgroup.synth import generate

logger = logging.getLogger(__name__)


def resolve_dataset(config: ExperimentConfig) -> tuple[SurvivalDataset, Region | None]:
    """Load or generate the configured dataset and its truth region, if any.

    An explicit ``truth_region`` overrides a generator's own truth.

    Raises:
        IngestError: If the CSV cannot be loaded.
        ConfigurationError: If the truth region has the wrong dimension.
    """
    truth: Region | None = None
    if config.synth is not None:
        data, truth = generate(config.synth)
    else:
        assert config.dataset is not None
        data = load_csv(config.dataset, config.columns())
    explicit = config.explicit_truth()
    if explicit is not None:
        truth = explicit
    if truth is not None and truth.dim != data.d_subgp:
        raise ConfigurationError(
            f"truth region has {truth.dim} dimensions, data has {data.d_subgp} subgroup features"
        )
    return data, truth


def evaluate_on_test(record: RunRecord, test: SurvivalDataset, alpha: float) -> RunRecord:
    """Score a record's training-fit coefficients on the test points in its region.

    Metrics stay None unless at least two test points fall inside the region
    with at least one comparable pair among them.
    """
    if record.region is None or record.beta is None:
        return record
    inside = test.in_region(record.region)
    count = int(inside.sum())
    if count < 2:
        return record.with_updates(n_test_in_region=count)
    try:
        report = evaluate_model(record.beta, test.subset(inside), alpha)
    except MetricError as e:
        logger.debug(
            "%s replicate %d: test metrics missing (%s)",
            record.setting,
            record.replicate,
            e.message,
        )
        return record.with_updates(n_test_in_region=count)
    return record.with_updates(
        n_test_in_region=count,
        test_epe=report.epe,
        test_c_index=report.c_index,
        test_rejection_fraction=report.rejection_fraction,
    )


@dataclass(frozen=True, slots=True)
class SweepTask:
    """One method's grid on one replicate's split.

    DDGroup tasks of one replicate share ``cores``.
    """

    replicate: int
    method: Method
    train: SurvivalDataset
    test: SurvivalDataset
    cores: CoreSearch | None = None


@dataclass(frozen=True, slots=True)
class SweepPlan:
    """Everything a task needs besides its split."""

    options: MethodOptions
    selection: SelectionRule
    size_filter: float
    rejection_alpha: float
    truth: Region | None
    bounds: Region


def run_task(task: SweepTask, plan: SweepPlan) -> SweepResult:
    """Run, select and evaluate one (replicate, method) pair."""
    runner = MethodRunner(task.train, plan.options, task.cores)
    records: list[RunRecord] = []
    try:
        for config in parameter_grid(task.method):
            outcome = runner.run(config)
            record = RunRecord.from_result(outcome, task.replicate, task.train.n)
            if plan.truth is not None and record.region is not None:
                score = region_f1(record.region, plan.truth, plan.bounds)
                record = record.with_updates(
                    precision=score.precision, recall=score.recall, f1=score.f1
                )
            records.append(record)
    finally:
        if task.cores is not None:
            task.cores.release()

    result = SweepResult(records=records)
    try:
        if plan.selection is SelectionRule.BEST_F1:
            chosen = select_best_f1(records)
        else:
            chosen = select_subgroup(records, plan.size_filter)
    except SelectError as e:
        logger.warning("%s", e.message)
        result.missing.append(MissingSelection(task.method.value, task.replicate, e.message))
        return result

    index = next(i for i, r in enumerate(records) if r is chosen)
    records[index] = evaluate_on_test(
        chosen.with_updates(selected=True), task.test, plan.rejection_alpha
    )
    logger.info(
        "Replicate %d, %s: %d/%d runs succeeded, selected %s",
        task.replicate,
        task.method.value,
        result.success_count,
        len(records),
        chosen.setting,
    )
    return result


def shared_core_search(
    train: SurvivalDataset, methods: Sequence[Method], options: MethodOptions
) -> CoreSearch | None:
    """One core-group search for every DDGroup method run on ``train``."""
    grids: dict[Quality, list[float]] = {}
    users = 0
    for method in methods:
        if not method.is_ddgroup:
            continue
        users += 1
        quality = DDGroupVariant.for_method(method).quality
        fractions = grids.setdefault(quality, [])
        fractions.extend(float(config["core_frac"]) for config in parameter_grid(method))
    if users == 0:
        return None
    try:
        return CoreSearch.for_grids(
            train, grids, ridge=options.ridge, max_centers=options.core_centers, users=users
        )
    except CoxGroupError as e:
        logger.debug("No shared core search: %s", e.message)
        return None


def plan_sweep(
    config: ExperimentConfig, data: SurvivalDataset, truth: Region | None
) -> tuple[list[SweepTask], SweepPlan]:
    """Split every replicate and lay out the tasks in (replicate, method) order."""
    options = config.method_options()
    tasks: list[SweepTask] = []
    for replicate in range(config.replicates):
        train, test = train_test_split(
            data, config.test_fraction, replicate_rng(config.seed, replicate)
        )
        cores = shared_core_search(train, config.methods, options)
        tasks.extend(
            SweepTask(replicate, method, train, test, cores if method.is_ddgroup else None)
            for method in config.methods
        )
    plan = SweepPlan(
        options=options,
        selection=config.selection,
        size_filter=config.size_filter,
        rejection_alpha=config.rejection_alpha,
        truth=truth,
        bounds=data.bounds(),
    )
    return tasks, plan


async def run_sweep_async(
    config: ExperimentConfig,
    data: SurvivalDataset | None = None,
    truth: Region | None = None,
) -> SweepResult:
    """Run the full protocol with up to ``config.workers`` concurrent tasks.

    Args:
        config: Experiment configuration.
        data: Preloaded dataset; resolved from ``config`` when omitted.
        truth: Truth region to use with ``data``.

    Returns:
        All records in (replicate, method, grid) order.
    """
    if data is None:
        data, truth = resolve_dataset(config)
    tasks, plan = plan_sweep(config, data, truth)
    logger.info("Sweeping %d tasks on %d rows with %d workers", len(tasks), data.n, config.workers)
    executor = ParallelExecutor(concurrency=config.workers)
    parts = await executor.execute([lambda t=t: run_task(t, plan) for t in tasks])
    result = SweepResult()
    for part in parts:
        result.extend(part)
    return result


def run_sweep(
    config: ExperimentConfig,
    data: SurvivalDataset | None = None,
    truth: Region | None = None,
) -> SweepResult:
    """Synchronous wrapper around :func:`run_sweep_async`."""
    return asyncio.run(run_sweep_async(config, data, truth))
