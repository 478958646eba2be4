"""coxgroup - subgroup discovery for Cox proportional-hazards models.

Finds axis-aligned regions of feature space where a single Cox model fits
well, providing:
- Cox fitting by Newton-Raphson on the log partial likelihood
- Expected prediction entropy, C-index and rank-based rejection metrics
- Conditional rank statistics with a linear-time recursion
- DDGroup, survival/Cox trees, PRIM and baseline subgroup methods
- Synthetic benchmarks with known ground-truth regions
- A reproducible train/test sweep harness with a CLI
"""

from coxgroup.algorithms import (
    Method,
    MethodConfig,
    MethodRunner,
    SubgroupResult,
    ddgroup,
    parameter_grid,
)
from coxgroup.config import ExperimentConfig, load_config
from coxgroup.crs import RankProbabilities, fast_log_rank_probs, rank_tail_score
from coxgroup.data import load_csv
from coxgroup.errors import (
    ConfigurationError,
    CoxGroupError,
    FitError,
    IngestError,
    InvalidArgumentError,
    MethodError,
    MetricError,
    SelectError,
)
from coxgroup.execution import RunRecord, SweepResult, run_sweep
from coxgroup.metrics import c_index, empirical_epe, rejection_fraction
from coxgroup.survival import CoxModel, Region, SurvivalDataset, fit_cox
from coxgroup.synth import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    # Version
    "__version__",
    # Core
    "SurvivalDataset",
    "Region",
    "CoxModel",
    "fit_cox",
    # Metrics
    "empirical_epe",
    "c_index",
    "rejection_fraction",
    "RankProbabilities",
    "fast_log_rank_probs",
    "rank_tail_score",
    # Methods
    "Method",
    "MethodConfig",
    "MethodRunner",
    "SubgroupResult",
    "parameter_grid",
    "ddgroup",
    # Data and experiments
    "SynthSpec",
    "generate",
    "load_csv",
    "ExperimentConfig",
    "load_config",
    "RunRecord",
    "SweepResult",
    "run_sweep",
    # Errors
    "CoxGroupError",
    "InvalidArgumentError",
    "ConfigurationError",
    "FitError",
    "MetricError",
    "MethodError",
    "IngestError",
    "SelectError",
]
