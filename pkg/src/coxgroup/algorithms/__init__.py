"""Subgroup-discovery methods over axis-aligned boxes."""

from coxgroup.algorithms.base import (
    ConformityScore,
    DDGroupVariant,
    Method,
    MethodConfig,
    MethodOptions,
    Quality,
    SubgroupResult,
    parameter_grid,
)
from coxgroup.algorithms.baselines import base_method, random_method
from coxgroup.algorithms.ddgroup import (
    CoreGroup,
    CoreSearch,
    PreparedDDGroup,
    ci_conformity_scores,
    conformity_scores,
    core_group,
    crs_conformity_scores,
    ddgroup,
    grow_box,
    naive_pl_censored_score,
    pl_conformity_scores,
    prepare_ddgroup,
    rejection_labels,
    standardize,
)
from coxgroup.algorithms.prim import BoxSearch, prim
from coxgroup.algorithms.runner import MethodRunner, run_method
from coxgroup.algorithms.trees import (
    SplitRule,
    SubgroupTree,
    TreeLeaf,
    best_leaf,
    cox_tree,
    logrank_split_scan,
    logrank_statistic,
    survival_tree,
)

__all__ = [
    # Settings and results
    "Method",
    "MethodConfig",
    "MethodOptions",
    "SubgroupResult",
    "parameter_grid",
    "Quality",
    "ConformityScore",
    "DDGroupVariant",
    # Baselines
    "base_method",
    "random_method",
    # Trees
    "SplitRule",
    "SubgroupTree",
    "TreeLeaf",
    "best_leaf",
    "survival_tree",
    "cox_tree",
    "logrank_statistic",
    "logrank_split_scan",
    # PRIM
    "BoxSearch",
    "prim",
    # DDGroup
    "CoreGroup",
    "CoreSearch",
    "PreparedDDGroup",
    "core_group",
    "standardize",
    "conformity_scores",
    "crs_conformity_scores",
    "ci_conformity_scores",
    "pl_conformity_scores",
    "naive_pl_censored_score",
    "rejection_labels",
    "grow_box",
    "prepare_ddgroup",
    "ddgroup",
    # Running
    "MethodRunner",
    "run_method",
]
