"""Tests for method identities and grids."""

from __future__ import annotations

import pytest

from coxgroup.algorithms import (
    DDGroupVariant,
    Method,
    MethodConfig,
    MethodOptions,
    Quality,
    SubgroupResult,
    parameter_grid,
)
from coxgroup.errors import InvalidArgumentError, TooFewPointsError


class TestMethod:
    """Tests for Method."""

    @pytest.mark.parametrize(
        ("name", "expected"),
        [
            ("dg", Method.DDGROUP),
            ("DG-CI", Method.DDGROUP_CI),
            ("prim", Method.PRIM),
            ("cox_tree", Method.COX_TREE),
            (" base ", Method.BASE),
        ],
    )
    def test_parse(self, name: str, expected: Method) -> None:
        """Values and member names both resolve."""
        assert Method.parse(name) is expected

    def test_parse_unknown(self) -> None:
        """Unknown names list the choices."""
        with pytest.raises(InvalidArgumentError, match="choose from"):
            Method.parse("lasso")

    def test_families(self) -> None:
        """Tree and DDGroup families are recognised."""
        assert Method.COX_TREE.is_tree and not Method.PRIM.is_tree
        assert Method.DDGROUP_NE.is_ddgroup and not Method.BASE.is_ddgroup


class TestParameterGrid:
    """Tests for parameter_grid."""

    @pytest.mark.parametrize("method", [m for m in Method if m is not Method.BASE])
    def test_hundred_settings(self, method: Method) -> None:
        """Every method but Base sweeps 100 distinct settings."""
        grid = parameter_grid(method)
        assert len(grid) == 100
        assert len({c.label for c in grid}) == 100

    def test_base_single(self) -> None:
        """Base has one setting."""
        assert [c.params for c in parameter_grid(Method.BASE)] == [{}]

    def test_prim_values(self) -> None:
        """PRIM sweeps alpha 0.01..0.25 over four supports."""
        grid = parameter_grid(Method.PRIM)
        assert sorted({c["alpha"] for c in grid}) == [round(0.01 * k, 2) for k in range(1, 26)]
        assert {c["beta0"] for c in grid} == {0.005, 0.01, 0.02, 0.04}

    def test_ddgroup_values(self) -> None:
        """DDGroup sweeps two core sizes and fifty quantiles."""
        grid = parameter_grid(Method.DDGROUP_PL)
        assert {c["core_frac"] for c in grid} == {0.05, 0.1}
        quantiles = sorted({c["rej_quantile"] for c in grid})
        assert quantiles[0] == 0.01 and quantiles[-1] == 0.5 and len(quantiles) == 50

    def test_no_expand_values(self) -> None:
        """DG-NE sweeps core_frac up to the whole dataset."""
        fracs = [c["core_frac"] for c in parameter_grid(Method.DDGROUP_NE)]
        assert fracs[0] == 0.01 and fracs[-1] == 1.0

    def test_tree_values(self) -> None:
        """Trees sweep depths 1..25 and four leaf sizes."""
        grid = parameter_grid(Method.SURVIVAL_TREE)
        assert {c["max_depth"] for c in grid} == set(range(1, 26))
        assert {c["min_leaf"] for c in grid} == {5, 10, 20, 40}


class TestMethodConfig:
    """Tests for MethodConfig."""

    def test_label(self) -> None:
        """Labels show the method and its settings."""
        config = MethodConfig(Method.PRIM, {"alpha": 0.05, "beta0": 0.01})
        assert config.label == "prim(alpha=0.05, beta0=0.01)"
        assert MethodConfig(Method.BASE).label == "base"

    def test_missing_key(self) -> None:
        """A missing hyperparameter raises."""
        with pytest.raises(InvalidArgumentError, match="core_frac"):
            MethodConfig(Method.DDGROUP)["core_frac"]


class TestDDGroupVariant:
    """Tests for DDGroupVariant."""

    def test_quality_pairing(self) -> None:
        """Each variant selects its core with its own quality."""
        assert DDGroupVariant.CRS.quality is Quality.EPE
        assert DDGroupVariant.CI.quality is Quality.C_INDEX
        assert DDGroupVariant.PL.quality is Quality.PARTIAL_LIKELIHOOD
        assert DDGroupVariant.NO_EXPAND.score is None

    def test_for_method(self) -> None:
        """DDGroup methods map onto variants."""
        assert DDGroupVariant.for_method(Method.DDGROUP_NE) is DDGroupVariant.NO_EXPAND
        with pytest.raises(InvalidArgumentError):
            DDGroupVariant.for_method(Method.PRIM)


class TestSubgroupResult:
    """Tests for SubgroupResult."""

    def test_failure_tag(self) -> None:
        """Failures carry the error class and message."""
        result = SubgroupResult.failure_result(
            MethodConfig(Method.RANDOM, {"seed": 1}), TooFewPointsError("too few", "random")
        )
        assert not result.success
        assert result.failed == "TooFewPointsError: [random] too few"
        assert result.beta is None


class TestMethodOptions:
    """Tests for MethodOptions."""

    def test_defaults_search_everything(self) -> None:
        """No centre or threshold cap unless asked for."""
        options = MethodOptions()
        assert options.core_centers is None
        assert options.tree_thresholds is None
