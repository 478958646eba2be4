"""Model and region evaluation metrics."""

from coxgroup.metrics.regions import (
    PointScore,
    RegionScore,
    best_point_match,
    epe_interval_grid,
    point_precision_recall,
    region_f1,
)
from coxgroup.metrics.rejection import leave_one_out_tail_scores, rejection_fraction
from coxgroup.metrics.scores import (
    MetricReport,
    c_index,
    count_comparable_pairs,
    empirical_epe,
    evaluate_model,
)

__all__ = [
    # Model scores
    "MetricReport",
    "empirical_epe",
    "c_index",
    "count_comparable_pairs",
    "evaluate_model",
    # Calibration
    "rejection_fraction",
    "leave_one_out_tail_scores",
    # Region recovery
    "RegionScore",
    "PointScore",
    "region_f1",
    "point_precision_recall",
    "best_point_match",
    "epe_interval_grid",
]
