"""Survival data model and Cox partial-likelihood fitting."""

from coxgroup.survival.cox import (
    CoxModel,
    fit_cox,
    log_partial_likelihood,
    log_risk_sums,
    risk_scores,
    risk_set_starts,
)
from coxgroup.survival.dataset import SurvivalDataset
from coxgroup.survival.region import Region

__all__ = [
    # Data
    "SurvivalDataset",
    "Region",
    # Cox model
    "CoxModel",
    "fit_cox",
    "log_partial_likelihood",
    "risk_scores",
    # Risk-set helpers
    "risk_set_starts",
    "log_risk_sums",
]
