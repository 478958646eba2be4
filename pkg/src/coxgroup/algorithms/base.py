"""Method identities, hyperparameter grids and run results."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from coxgroup.errors import InvalidArgumentError
from coxgroup.survival import CoxModel, Region
from coxgroup.types import FloatArray


class Method(str, Enum):
    """Subgroup-discovery method."""

    BASE = "base"
    RANDOM = "random"
    SURVIVAL_TREE = "st"
    COX_TREE = "ct"
    PRIM = "prim"
    DDGROUP = "dg"
    DDGROUP_CI = "dg-ci"
    DDGROUP_PL = "dg-pl"
    DDGROUP_NE = "dg-ne"

    @classmethod
    def parse(cls, name: str) -> Method:
        """Look a method up by value or member name, case-insensitively."""
        key = name.strip().lower()
        for method in cls:
            if key in (method.value, method.name.lower()):
                return method
        choices = ", ".join(m.value for m in cls)
        raise InvalidArgumentError(f"unknown method '{name}' (choose from {choices})", "method")

    @property
    def is_tree(self) -> bool:
        return self in (Method.SURVIVAL_TREE, Method.COX_TREE)

    @property
    def is_ddgroup(self) -> bool:
        return self.value.startswith("dg")


class Quality(str, Enum):
    """Core-group quality measure."""

    EPE = "epe"
    C_INDEX = "c_index"
    PARTIAL_LIKELIHOOD = "partial_likelihood"

    @property
    def minimize(self) -> bool:
        return self is Quality.EPE


class ConformityScore(str, Enum):
    """Per-point score against a core group; low values are rejected."""

    CRS = "crs"
    CI = "ci"
    PL = "pl"


class DDGroupVariant(str, Enum):
    """DDGroup flavour: rejection score, or no expansion at all."""

    CRS = "crs"
    CI = "ci"
    PL = "pl"
    NO_EXPAND = "no_expand"

    @property
    def quality(self) -> Quality:
        """Core-group quality paired with the variant."""
        return {
            DDGroupVariant.CRS: Quality.EPE,
            DDGroupVariant.NO_EXPAND: Quality.EPE,
            DDGroupVariant.CI: Quality.C_INDEX,
            DDGroupVariant.PL: Quality.PARTIAL_LIKELIHOOD,
        }[self]

    @property
    def score(self) -> ConformityScore | None:
        if self is DDGroupVariant.NO_EXPAND:
            return None
        return ConformityScore(self.value)

    @classmethod
    def for_method(cls, method: Method) -> DDGroupVariant:
        variants = {
            Method.DDGROUP: cls.CRS,
            Method.DDGROUP_CI: cls.CI,
            Method.DDGROUP_PL: cls.PL,
            Method.DDGROUP_NE: cls.NO_EXPAND,
        }
        if method not in variants:
            raise InvalidArgumentError(f"{method.value} is not a DDGroup method", "method")
        return variants[method]


@dataclass(frozen=True, slots=True)
class MethodConfig:
    """One hyperparameter setting of one method.

    Attributes:
        method: The method.
        params: Method-specific hyperparameters.
    """

    method: Method
    params: dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Any:
        try:
            return self.params[key]
        except KeyError:
            raise InvalidArgumentError(
                f"missing hyperparameter '{key}'", self.method.value
            ) from None

    @property
    def label(self) -> str:
        """Readable identifier, e.g. ``prim(alpha=0.05, beta0=0.01)``."""
        if not self.params:
            return self.method.value
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.method.value}({args})"


def _steps(count: int, start: int = 1, scale: float = 0.01) -> list[float]:
    return [round(k * scale, 2) for k in range(start, start + count)]


def parameter_grid(method: Method) -> list[MethodConfig]:
    """Every hyperparameter setting swept for ``method``.

    Each method has 100 settings; Base has one.
    """
    if method is Method.BASE:
        grid: list[dict[str, Any]] = [{}]
    elif method is Method.RANDOM:
        grid = [{"seed": s} for s in range(100)]
    elif method.is_tree:
        grid = [
            {"max_depth": depth, "min_leaf": leaf}
            for leaf in (5, 10, 20, 40)
            for depth in range(1, 26)
        ]
    elif method is Method.PRIM:
        grid = [
            {"alpha": alpha, "beta0": beta0}
            for beta0 in (0.005, 0.01, 0.02, 0.04)
            for alpha in _steps(25)
        ]
    elif method is Method.DDGROUP_NE:
        grid = [{"core_frac": frac} for frac in _steps(100)]
    else:
        grid = [
            {"core_frac": frac, "rej_quantile": q}
            for frac in (0.05, 0.1)
            for q in _steps(50)
        ]
    return [MethodConfig(method, params) for params in grid]


@dataclass(frozen=True, slots=True)
class MethodOptions:
    """Knobs shared by every run that are not part of a grid.

    Attributes:
        ridge: Ridge penalty for every Cox fit.
        core_centers: Cap on candidate core-group centres (None = every point).
        tree_thresholds: Cap on Cox-tree thresholds tried per feature (None = every midpoint).
        max_tree_depth: Depth to which trees are grown before truncation.
    """

    ridge: float = 0.0
    core_centers: int | None = None
    tree_thresholds: int | None = None
    max_tree_depth: int = 25


@dataclass(frozen=True, slots=True)
class SubgroupResult:
    """Outcome of one method run on one training set.

    Attributes:
        config: Setting that produced the result.
        region: Returned region (None when failed).
        model: Cox model fit on the training points inside ``region``.
        train_epe: EPE of ``model`` on those points.
        n_in_region: Number of training points inside ``region``.
        failed: Error tag when the run failed.
    """

    config: MethodConfig
    region: Region | None = None
    model: CoxModel | None = None
    train_epe: float | None = None
    n_in_region: int = 0
    failed: str | None = None

    @property
    def success(self) -> bool:
        return self.failed is None

    @property
    def beta(self) -> FloatArray | None:
        return None if self.model is None else self.model.beta

    @classmethod
    def success_result(
        cls,
        config: MethodConfig,
        region: Region,
        model: CoxModel,
        train_epe: float,
        n_in_region: int,
    ) -> SubgroupResult:
        """Create a successful result."""
        return cls(
            config=config,
            region=region,
            model=model,
            train_epe=train_epe,
            n_in_region=n_in_region,
        )

    @classmethod
    def failure_result(
        cls, config: MethodConfig, error: Exception, region: Region | None = None
    ) -> SubgroupResult:
        """Create a failed result tagged with the error's class and message."""
        message = getattr(error, "message", str(error))
        return cls(config=config, region=region, failed=f"{type(error).__name__}: {message}")
