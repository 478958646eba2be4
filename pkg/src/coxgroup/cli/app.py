"""coxgroup CLI application."""

from __future__ import annotations

import asyncio
import logging
from pathlib import Path
from typing import Annotated, Any

import typer
import yaml
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from coxgroup.config import ExperimentConfig, load_config
from coxgroup.errors import CoxGroupError
from coxgroup.survival import Region


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        from coxgroup import __version__

        print(f"coxgroup {__version__}")
        raise typer.Exit()


app = typer.Typer(
    name="coxgroup",
    help="Subgroup discovery for Cox proportional-hazards models",
    no_args_is_help=True,
    add_completion=False,
)

console = Console()
error_console = Console(stderr=True)


def setup_logging(verbose: bool) -> None:
    """Route coxgroup log records to stderr through rich."""
    logger = logging.getLogger("coxgroup")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=error_console, show_path=False))
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False


@app.callback()
def _app_callback(
    version: Annotated[  # noqa: ARG001
        bool,
        typer.Option("--version", "-V", help="Show version and exit", callback=version_callback),
    ] = False,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Show debug logging"),
    ] = False,
) -> None:
    """Subgroup discovery for Cox proportional-hazards models."""
    setup_logging(verbose)


def parse_comma_list(value: str | None) -> list[str] | None:
    """Parse comma-separated string into list."""
    return [part.strip() for part in value.split(",") if part.strip()] if value else None


def parse_params(values: list[str] | None) -> dict[str, Any]:
    """Parse repeated ``key=value`` options; values are read as YAML scalars or lists."""
    params: dict[str, Any] = {}
    for item in values or []:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise typer.BadParameter(f"expected key=value, got '{item}'")
        try:
            params[key.strip()] = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise typer.BadParameter(f"cannot parse value of '{key}': {e}") from e
    return params


def fail(e: CoxGroupError) -> typer.Exit:
    """Print a coxgroup error and return the exit to raise."""
    error_console.print(f"[red]Error:[/red] {e.message}")
    return typer.Exit(1)


def format_region(region: Region | None) -> str:
    if region is None:
        return "-"
    return " x ".join(f"[{lo:.4g}, {hi:.4g}]" for lo, hi in region.to_pairs())


def format_value(value: float | None) -> str:
    return "-" if value is None else f"{value:.4g}"


ConfigOpt = Annotated[
    Path | None,
    typer.Option("--config", "-c", help="Experiment config file (default: ./coxgroup.yaml)"),
]
DatasetOpt = Annotated[Path | None, typer.Option("--dataset", "-d", help="Input CSV")]
TimeColOpt = Annotated[str | None, typer.Option("--time-col", help="Time column")]
EventColOpt = Annotated[str | None, typer.Option("--event-col", help="Event column")]
AdjustColsOpt = Annotated[
    str | None,
    typer.Option("--adjust-cols", help="Cox feature columns (comma-separated)"),
]
SubgroupColsOpt = Annotated[
    str | None,
    typer.Option("--subgroup-cols", help="Subgroup feature columns (comma-separated)"),
]
TruthOpt = Annotated[
    Path | None,
    typer.Option("--truth-region", help="Truth-region sidecar (one 'lower upper' line per dim)"),
]
SeedOpt = Annotated[int | None, typer.Option("--seed", help="Master seed")]


def build_config(
    config_path: Path | None,
    dataset: Path | None = None,
    time_col: str | None = None,
    event_col: str | None = None,
    adjust_cols: str | None = None,
    subgroup_cols: str | None = None,
    truth_region: Path | None = None,
    seed: int | None = None,
    **extra: Any,
) -> ExperimentConfig:
    """Load the config file and layer command-line values over it."""
    overrides: dict[str, Any] = {
        "dataset": dataset,
        "time_column": time_col,
        "event_column": event_col,
        "adjust_columns": parse_comma_list(adjust_cols),
        "subgroup_columns": parse_comma_list(subgroup_cols),
        "truth_region": truth_region,
        "seed": seed,
        **extra,
    }
    try:
        return load_config(config_path, overrides)
    except CoxGroupError as e:
        raise fail(e) from e


@app.command()
def gen(
    kind: Annotated[str, typer.Argument(help="Benchmark family: counter, nonlinear, plain_cox")],
    out: Annotated[Path, typer.Option("--out", "-o", help="CSV file to write")],
    n: Annotated[int, typer.Option("--n", help="Number of rows")] = 4000,
    d: Annotated[int | None, typer.Option("--d", help="Feature dimension")] = None,
    seed: Annotated[int, typer.Option("--seed", help="Generator seed")] = 0,
    param: Annotated[
        list[str] | None,
        typer.Option("--param", "-p", help="Family parameter key=value (repeatable)"),
    ] = None,
    truth_out: Annotated[
        Path | None,
        typer.Option("--truth-out", help="Truth sidecar path (default: <out>.truth.txt)"),
    ] = None,
) -> None:
    """Write a synthetic dataset and its truth-region sidecar."""
    from pydantic import ValidationError as PydanticValidationError

    from coxgroup.commands import gen_dataset
    from coxgroup.synth import SynthKind, SynthSpec

    try:
        synth_kind = SynthKind(kind.replace("-", "_").lower())
    except ValueError as e:
        choices = ", ".join(k.value for k in SynthKind)
        error_console.print(f"[red]Error:[/red] unknown family '{kind}' (choose from {choices})")
        raise typer.Exit(1) from e

    dim = d if d is not None else (1 if synth_kind is SynthKind.COUNTER else 2)
    try:
        spec = SynthSpec(kind=synth_kind, n=n, d=dim, seed=seed, params=parse_params(param))
    except PydanticValidationError as e:
        for error in e.errors():
            error_console.print(f"[red]Error:[/red] {error['msg']}")
        raise typer.Exit(1) from e

    try:
        result = gen_dataset(spec, out, truth_out)
    except CoxGroupError as e:
        raise fail(e) from e

    console.print(
        f"[green]Wrote {result.n} rows[/green] ({result.n_events} events) to {result.data_path}"
    )
    if result.truth_path is not None:
        console.print(f"Truth region {format_region(result.truth)} -> {result.truth_path}")


@app.command()
def discover(
    method: Annotated[str, typer.Argument(help="Method: base, random, st, ct, prim, dg, ...")],
    config_path: ConfigOpt = None,
    dataset: DatasetOpt = None,
    time_col: TimeColOpt = None,
    event_col: EventColOpt = None,
    adjust_cols: AdjustColsOpt = None,
    subgroup_cols: SubgroupColsOpt = None,
    truth_region: TruthOpt = None,
    seed: SeedOpt = None,
    param: Annotated[
        list[str] | None,
        typer.Option("--param", "-p", help="Run one setting, key=value (repeatable)"),
    ] = None,
    save: Annotated[
        Path | None,
        typer.Option("--save", "-s", help="Write the chosen subgroup as JSON"),
    ] = None,
) -> None:
    """Run one method on the whole dataset (one setting, or its grid plus selection)."""
    from coxgroup.algorithms import Method
    from coxgroup.commands import discover as do_discover

    config = build_config(
        config_path, dataset, time_col, event_col, adjust_cols, subgroup_cols, truth_region, seed
    )
    try:
        result = do_discover(config, Method.parse(method), parse_params(param) or None, save)
    except CoxGroupError as e:
        raise fail(e) from e

    chosen = result.chosen
    if not chosen.success:
        error_console.print(f"[red]Run failed:[/red] {chosen.failed}")
        raise typer.Exit(1)

    table = Table(title=f"{chosen.method} {chosen.setting}".strip())
    table.add_column("Field", style="bold")
    table.add_column("Value")
    table.add_row("region", format_region(chosen.region))
    table.add_row("beta", ", ".join(f"{b:.4g}" for b in chosen.beta or ()))
    table.add_row("train EPE", format_value(chosen.train_epe))
    table.add_row("size", f"{chosen.n_in_region} ({chosen.size_fraction:.1%})")
    if chosen.f1 is not None:
        table.add_row("F1", format_value(chosen.f1))
        table.add_row("precision / recall", f"{chosen.precision:.4g} / {chosen.recall:.4g}")
    console.print(table)
    if len(result.records) > 1:
        failed = sum(1 for r in result.records if not r.success)
        console.print(f"Swept {len(result.records)} settings ({failed} failed)")
    if result.saved_to is not None:
        console.print(f"Saved subgroup to {result.saved_to}")


@app.command()
def sweep(
    config_path: ConfigOpt = None,
    dataset: DatasetOpt = None,
    time_col: TimeColOpt = None,
    event_col: EventColOpt = None,
    adjust_cols: AdjustColsOpt = None,
    subgroup_cols: SubgroupColsOpt = None,
    truth_region: TruthOpt = None,
    seed: SeedOpt = None,
    methods: Annotated[
        str | None,
        typer.Option("--methods", "-m", help="Methods to sweep (comma-separated)"),
    ] = None,
    replicates: Annotated[
        int | None, typer.Option("--replicates", "-r", help="Train/test splits")
    ] = None,
    test_frac: Annotated[float | None, typer.Option("--test-frac", help="Test share")] = None,
    size_filter: Annotated[
        float | None,
        typer.Option("--size-filter", help="Minimum training share of a selected region"),
    ] = None,
    out: Annotated[Path | None, typer.Option("--out", "-o", help="Output directory")] = None,
    workers: Annotated[
        int | None, typer.Option("--workers", "-w", help="Concurrent tasks")
    ] = None,
) -> None:
    """Run the full replicate x method x grid protocol and write the summary."""
    from coxgroup.commands import sweep as do_sweep

    config = build_config(
        config_path,
        dataset,
        time_col,
        event_col,
        adjust_cols,
        subgroup_cols,
        truth_region,
        seed,
        methods=parse_comma_list(methods),
        replicates=replicates,
        test_fraction=test_frac,
        size_filter=size_filter,
        output=out,
        workers=workers,
    )

    async def run() -> None:
        try:
            outcome = await do_sweep(config)
        except CoxGroupError as e:
            raise fail(e) from e
        console.print(outcome.report.table())
        result = outcome.result
        console.print(
            f"{len(result)} runs, {result.failure_count} failed, "
            f"{len(result.missing)} selections missing"
        )
        console.print(f"Results: {outcome.report.results_path}")
        console.print(f"Summary: {outcome.report.summary_path}")

    asyncio.run(run())


@app.command()
def evaluate(
    subgroup: Annotated[Path, typer.Argument(help="Subgroup JSON written by 'discover --save'")],
    config_path: ConfigOpt = None,
    dataset: DatasetOpt = None,
    time_col: TimeColOpt = None,
    event_col: EventColOpt = None,
    adjust_cols: AdjustColsOpt = None,
    subgroup_cols: SubgroupColsOpt = None,
    truth_region: TruthOpt = None,
) -> None:
    """Score a saved region and its coefficients on a dataset."""
    from coxgroup.commands import evaluate as do_evaluate

    config = build_config(
        config_path, dataset, time_col, event_col, adjust_cols, subgroup_cols, truth_region
    )
    try:
        result = do_evaluate(config, subgroup)
    except CoxGroupError as e:
        raise fail(e) from e

    table = Table(title=str(subgroup))
    table.add_column("Field", style="bold")
    table.add_column("Value")
    table.add_row("region", format_region(result.subgroup.region))
    table.add_row("size", f"{result.n_in_region} ({result.size_fraction:.1%})")
    if result.metrics is not None:
        table.add_row("EPE", format_value(result.metrics.epe))
        table.add_row("C-index", format_value(result.metrics.c_index))
        table.add_row(
            f"rejection @ {config.rejection_alpha:g}",
            format_value(result.metrics.rejection_fraction),
        )
    else:
        table.add_row("metrics", f"[yellow]{result.error}[/yellow]")
    if result.region_score is not None:
        table.add_row("F1", format_value(result.region_score.f1))
        table.add_row(
            "precision / recall",
            f"{result.region_score.precision:.4g} / {result.region_score.recall:.4g}",
        )
    console.print(table)


def main() -> None:
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
