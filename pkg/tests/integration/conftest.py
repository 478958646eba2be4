"""Integration test fixtures."""

from __future__ import annotations

from pathlib import Path

import pytest

from coxgroup.commands import gen_dataset
from coxgroup.synth import SynthKind, SynthSpec


@pytest.fixture
def counter_csv(tmp_path: Path) -> Path:
    """Counter benchmark CSV with its truth sidecar next to it."""
    path = tmp_path / "counter.csv"
    gen_dataset(SynthSpec(kind=SynthKind.COUNTER, n=400, d=1, seed=11), path)
    return path


@pytest.fixture
def experiment_dir(counter_csv: Path) -> Path:
    """Directory holding a coxgroup.yaml that points at the counter CSV."""
    config = counter_csv.parent / "coxgroup.yaml"
    config.write_text(
        "dataset: counter.csv\n"
        "adjust_columns: [x1]\n"
        "truth_region: counter.truth.txt\n"
        "replicates: 2\n"
        "workers: 2\n"
        "output: results\n"
    )
    return counter_csv.parent
