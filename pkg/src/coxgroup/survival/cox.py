"""Cox proportional-hazards fitting by partial likelihood.

Tied times follow the Breslow convention: every failure at time ``t`` uses
the full risk set ``{j : t_j >= t}``. The baseline hazard is never estimated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from coxgroup.errors import InsufficientEventsError, InvalidArgumentError
from coxgroup.survival.dataset import SurvivalDataset
from coxgroup.types import ArrayLike, FloatArray, IntArray

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100
GRADIENT_TOLERANCE = 1e-9
RELATIVE_TOLERANCE = 1e-12
RIDGE_FLOOR = 1e-8
MAX_CONDITION = 1e14
MAX_HALVINGS = 40


@dataclass(frozen=True, slots=True)
class CoxModel:
    """Fitted Cox coefficients and fit diagnostics.

    Attributes:
        beta: Coefficient per adjustment feature.
        log_pl: Log partial likelihood of ``beta`` on the fitting data.
        converged: Whether a stopping tolerance was reached.
        iterations: Newton iterations performed.
        ridge: Ridge penalty actually used.
        ridge_bumped: Whether the ridge was raised to recover from a singular Hessian.
    """

    beta: FloatArray
    log_pl: float
    converged: bool
    iterations: int
    ridge: float = 0.0
    ridge_bumped: bool = False

    def __post_init__(self) -> None:
        beta = np.array(self.beta, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(beta)):
            raise InvalidArgumentError("coefficients must be finite", "beta")
        beta.setflags(write=False)
        object.__setattr__(self, "beta", beta)

    @property
    def dim(self) -> int:
        return int(self.beta.shape[0])

    @property
    def hazard_ratios(self) -> FloatArray:
        """``exp(beta)``: multiplicative hazard change per unit of each feature."""
        return np.exp(self.beta)

    def predict(self, x: ArrayLike) -> FloatArray:
        """Risk scores ``beta^T x`` for each row of ``x``."""
        return risk_scores(self.beta, x)


def _check_beta(beta: ArrayLike, d: int) -> FloatArray:
    b = np.asarray(beta, dtype=np.float64).reshape(-1)
    if b.shape[0] != d:
        raise InvalidArgumentError(f"has length {b.shape[0]}, expected {d}", "beta")
    if not np.all(np.isfinite(b)):
        raise InvalidArgumentError("must be finite", "beta")
    return b


def risk_set_starts(sorted_times: FloatArray) -> IntArray:
    """First sorted index whose time equals each row's time (Breslow risk-set start)."""
    return np.searchsorted(sorted_times, sorted_times, side="left")


def log_risk_sums(eta: FloatArray, starts: IntArray) -> FloatArray:
    """``log sum_{j >= start_i} exp(eta_j)`` per row, for time-sorted ``eta``."""
    suffix = np.logaddexp.accumulate(eta[::-1])[::-1]
    return suffix[starts]


def _sorted_log_pl(eta: FloatArray, events: IntArray, starts: IntArray) -> float:
    failed = events == 1
    if not np.any(failed):
        return 0.0
    log_sums = log_risk_sums(eta, starts)
    return float(np.sum(eta[failed] - log_sums[failed]))


def risk_scores(beta: ArrayLike, x: ArrayLike) -> FloatArray:
    """Linear predictors ``beta^T x_i``.

    Args:
        beta: Coefficient vector of length ``d``.
        x: ``n x d`` feature matrix (a 1-D array is one row).

    Returns:
        Score per row.

    Raises:
        InvalidArgumentError: If the dimensions disagree or ``beta`` is not finite.
    """
    matrix = np.asarray(x, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[None, :]
    b = _check_beta(beta, matrix.shape[1] if matrix.ndim == 2 else -1)
    return matrix @ b


def log_partial_likelihood(beta: ArrayLike, data: SurvivalDataset) -> float:
    """Breslow log partial likelihood of ``beta`` on ``data``.

    Args:
        beta: Coefficient vector of length ``d1``.
        data: Survival data, in any row order.

    Returns:
        ``sum_{i: event} [eta_i - log sum_{j: t_j >= t_i} exp(eta_j)]``.

    Raises:
        InvalidArgumentError: If ``beta`` is not finite or has the wrong length.
    """
    b = _check_beta(beta, data.d_adjust)
    order = data.sort_index
    times = data.times[order]
    eta = data.x_adjust[order] @ b
    return _sorted_log_pl(eta, data.events[order], risk_set_starts(times))


class _NewtonProblem:
    """Centred, time-sorted arrays for Newton-Raphson on the penalised log-PL."""

    def __init__(self, data: SurvivalDataset) -> None:
        order = data.sort_index
        x = data.x_adjust[order]
        self.x = x - x.mean(axis=0)
        self.events = data.events[order]
        self.failed = self.events == 1
        self.starts = risk_set_starts(data.times[order])
        self.d = x.shape[1]

    def objective(self, beta: FloatArray, ridge: float) -> float:
        eta = self.x @ beta
        return _sorted_log_pl(eta, self.events, self.starts) - 0.5 * ridge * float(beta @ beta)

    def derivatives(self, beta: FloatArray, ridge: float) -> tuple[FloatArray, FloatArray]:
        """Gradient and information matrix (negative Hessian)."""
        x = self.x
        eta = x @ beta
        w = np.exp(eta - eta.max())
        s0 = np.cumsum(w[::-1])[::-1]
        s1 = np.cumsum((w[:, None] * x)[::-1], axis=0)[::-1]
        s2 = np.cumsum((w[:, None, None] * x[:, :, None] * x[:, None, :])[::-1], axis=0)[::-1]

        idx = self.starts[self.failed]
        denom = s0[idx]
        mean = s1[idx] / denom[:, None]
        grad = (x[self.failed] - mean).sum(axis=0) - ridge * beta
        info = (s2[idx] / denom[:, None, None]).sum(axis=0) - mean.T @ mean
        info = info + ridge * np.eye(self.d)
        return grad, info


def _newton_direction(info: FloatArray, grad: FloatArray) -> FloatArray | None:
    if not np.all(np.isfinite(info)):
        return None
    cond = np.linalg.cond(info)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        return None
    try:
        delta = np.linalg.solve(info, grad)
    except np.linalg.LinAlgError:
        return None
    return delta if np.all(np.isfinite(delta)) else None


def fit_cox(data: SurvivalDataset, ridge: float = 0.0) -> CoxModel:
    """Maximise the ridge-penalised Breslow log partial likelihood.

    Newton-Raphson from ``beta = 0`` with step-halving. A singular or
    ill-conditioned information matrix raises the ridge to ``1e-8`` and the
    fit continues; the model records the bump.

    Args:
        data: Fitting data.
        ridge: Penalty weight on ``||beta||^2 / 2``.

    Returns:
        Fitted model; ``converged`` is False when the iteration cap is hit.

    Raises:
        InsufficientEventsError: If there are fewer than ``d1 + 1`` events.
        InvalidArgumentError: If ``ridge`` is negative or not finite.
    """
    if not np.isfinite(ridge) or ridge < 0:
        raise InvalidArgumentError("must be finite and non-negative", "ridge")
    required = data.d_adjust + 1
    if data.n_events < required:
        raise InsufficientEventsError(data.n_events, required)

    problem = _NewtonProblem(data)
    beta = np.zeros(problem.d)
    objective = problem.objective(beta, ridge)
    bumped = False
    converged = False
    iterations = 0

    while iterations < MAX_ITERATIONS:
        grad, info = problem.derivatives(beta, ridge)
        if np.max(np.abs(grad)) < GRADIENT_TOLERANCE:
            converged = True
            break
        iterations += 1

        delta = _newton_direction(info, grad)
        if delta is None:
            if ridge < RIDGE_FLOOR:
                logger.debug("Singular information matrix; ridge raised to %g", RIDGE_FLOOR)
                ridge = RIDGE_FLOOR
                bumped = True
                objective = problem.objective(beta, ridge)
                continue
            delta = np.linalg.pinv(info) @ grad

        step = 1.0
        for _ in range(MAX_HALVINGS):
            candidate = beta + step * delta
            value = problem.objective(candidate, ridge)
            if np.isfinite(value) and value >= objective:
                break
            step /= 2.0
        else:
            # No ascent at machine precision: already at the optimum.
            converged = True
            break

        change = abs(value - objective)
        beta, objective = candidate, value
        if change <= RELATIVE_TOLERANCE * max(abs(objective), 1.0):
            converged = True
            break

    if not converged:
        logger.debug("Cox fit stopped after %d iterations without converging", iterations)

    return CoxModel(
        beta=beta,
        log_pl=log_partial_likelihood(beta, data),
        converged=converged,
        iterations=iterations,
        ridge=ridge,
        ridge_bumped=bumped,
    )
