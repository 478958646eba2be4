"""Conditional rank statistics (CRS) and rank tail scores."""

from coxgroup.crs.ranks import (
    RankProbabilities,
    RankScorer,
    TailScore,
    fast_log_rank_probs,
    naive_log_rank_probs,
    rank_tail_score,
)

__all__ = [
    "RankProbabilities",
    "TailScore",
    "RankScorer",
    "fast_log_rank_probs",
    "naive_log_rank_probs",
    "rank_tail_score",
]
