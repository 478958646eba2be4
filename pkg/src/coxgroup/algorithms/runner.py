"""Run any method setting on a training set and package the result."""

from __future__ import annotations

import logging
from collections.abc import Iterable

from coxgroup.algorithms.base import (
    DDGroupVariant,
    Method,
    MethodConfig,
    MethodOptions,
    SubgroupResult,
    parameter_grid,
)
from coxgroup.algorithms.baselines import base_method, random_method
from coxgroup.algorithms.ddgroup import CoreSearch, PreparedDDGroup, prepare_ddgroup
from coxgroup.algorithms.prim import BoxSearch
from coxgroup.algorithms.trees import SplitRule, SubgroupTree, best_leaf
from coxgroup.errors import CoxGroupError, InvalidArgumentError
from coxgroup.metrics import empirical_epe
from coxgroup.survival import Region, SurvivalDataset, fit_cox

logger = logging.getLogger(__name__)


class MethodRunner:
    """Runs method settings on one training set.

    Work that does not depend on every hyperparameter (a tree for a given
    ``min_leaf``, a DDGroup core search for a given ``core_frac``, PRIM box
    fits) is cached, so sweeping a grid costs little more than its most
    expensive distinct setting.

    Args:
        train: Training data.
        options: Shared run options.
        cores: Core-group search over ``train`` shared with other runners.
    """

    def __init__(
        self,
        train: SurvivalDataset,
        options: MethodOptions | None = None,
        cores: CoreSearch | None = None,
    ) -> None:
        self.train = train
        self.options = options or MethodOptions()
        self.cores = cores
        self._trees: dict[tuple[SplitRule, int], SubgroupTree] = {}
        self._prepared: dict[tuple[DDGroupVariant, float], PreparedDDGroup | CoxGroupError] = {}
        self._boxes: BoxSearch | None = None

    def finalize(self, config: MethodConfig, region: Region) -> SubgroupResult:
        """Refit on the training points in ``region`` and score the fit."""
        inside = self.train.in_region(region)
        n_inside = int(inside.sum())
        try:
            if n_inside == 0:
                raise InvalidArgumentError("region holds no training points", "region")
            group = self.train.subset(inside)
            model = fit_cox(group, ridge=self.options.ridge)
            epe = empirical_epe(model.beta, group)
        except CoxGroupError as e:
            return SubgroupResult.failure_result(config, e, region=region)
        return SubgroupResult.success_result(config, region, model, epe, n_inside)

    def _tree(self, rule: SplitRule, min_leaf: int) -> SubgroupTree:
        key = (rule, min_leaf)
        if key not in self._trees:
            self._trees[key] = SubgroupTree(
                self.train,
                rule,
                min_leaf,
                ridge=self.options.ridge,
                max_thresholds=self.options.tree_thresholds,
            )
        return self._trees[key]

    def _core_search(self) -> CoreSearch:
        if self.cores is None:
            self.cores = CoreSearch(
                self.train, ridge=self.options.ridge, max_centers=self.options.core_centers
            )
        return self.cores

    def _ddgroup(self, variant: DDGroupVariant, core_frac: float) -> PreparedDDGroup:
        key = (variant, core_frac)
        if key not in self._prepared:
            try:
                self._prepared[key] = prepare_ddgroup(
                    self.train, core_frac, variant, search=self._core_search()
                )
            except CoxGroupError as e:
                self._prepared[key] = e
        prepared = self._prepared[key]
        if isinstance(prepared, CoxGroupError):
            raise prepared
        return prepared

    def region(self, config: MethodConfig) -> Region:
        """Region for one setting, before the final refit.

        Raises:
            CoxGroupError: Whatever the method raises.
        """
        method = config.method
        if method is Method.BASE:
            return base_method(self.train)
        if method is Method.RANDOM:
            return random_method(self.train, int(config["seed"]))
        if method.is_tree:
            rule = SplitRule.LOGRANK if method is Method.SURVIVAL_TREE else SplitRule.EPE
            tree = self._tree(rule, int(config["min_leaf"]))
            return best_leaf(tree.leaves(int(config["max_depth"]))).region
        if method is Method.PRIM:
            if self._boxes is None:
                self._boxes = BoxSearch(self.train, ridge=self.options.ridge)
            return self._boxes.run(float(config["alpha"]), float(config["beta0"]))
        variant = DDGroupVariant.for_method(method)
        prepared = self._ddgroup(variant, float(config["core_frac"]))
        if variant is DDGroupVariant.NO_EXPAND:
            return prepared.region()
        return prepared.region(float(config["rej_quantile"]))

    def run(self, config: MethodConfig) -> SubgroupResult:
        """Run one setting; failures become failed results instead of raising."""
        try:
            region = self.region(config)
        except CoxGroupError as e:
            logger.debug("%s failed: %s", config.label, e.message)
            return SubgroupResult.failure_result(config, e)
        return self.finalize(config, region)

    def run_grid(
        self, method: Method, configs: Iterable[MethodConfig] | None = None
    ) -> list[SubgroupResult]:
        """Run every setting of ``method`` (its full grid by default)."""
        settings = parameter_grid(method) if configs is None else list(configs)
        return [self.run(config) for config in settings]


def run_method(
    train: SurvivalDataset, config: MethodConfig, options: MethodOptions | None = None
) -> SubgroupResult:
    """Run a single setting on ``train``."""
    return MethodRunner(train, options).run(config)
