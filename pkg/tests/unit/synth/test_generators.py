"""Tests for the synthetic benchmark generators."""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.stats import kendalltau

from coxgroup.errors import InvalidArgumentError
from coxgroup.survival import Region, fit_cox
from coxgroup.synth import (
    SynthKind,
    SynthSpec,
    censoring_log_rate,
    gen_counter,
    gen_nonlinear,
    gen_plain_cox,
    generate,
    nonlinear_half_width,
)


class TestCounter:
    """Tests for gen_counter."""

    def test_shape_and_truth(self) -> None:
        """One feature on [0, 1] and the true region [c, 1]."""
        data, truth = gen_counter(n=500, c=0.3, seed=1)
        assert data.n == 500
        assert data.d_subgp == 1
        assert truth.lower == (0.3,)
        assert truth.upper == (1.0,)
        assert data.x_subgp.min() >= 0.0 and data.x_subgp.max() <= 1.0
        assert data.events.all()

    def test_deterministic(self) -> None:
        """Same seed gives identical data."""
        a, _ = gen_counter(n=100, seed=7)
        b, _ = gen_counter(n=100, seed=7)
        np.testing.assert_array_equal(a.times, b.times)
        np.testing.assert_array_equal(a.x_subgp, b.x_subgp)

    def test_seed_changes_data(self) -> None:
        """Different seeds differ."""
        a, _ = gen_counter(n=100, seed=1)
        b, _ = gen_counter(n=100, seed=2)
        assert not np.array_equal(a.times, b.times)

    def test_bad_threshold(self) -> None:
        """c must be interior."""
        with pytest.raises(InvalidArgumentError):
            gen_counter(n=10, c=1.0)

    @pytest.mark.slow
    def test_mean_time_below_threshold(self) -> None:
        """Just below c the mean failure time is e^(-m x) near x = 0.4."""
        data, _ = gen_counter(n=100_000, seed=5)
        x = data.x_subgp[:, 0]
        near = (x >= 0.39) & (x < 0.4)
        times = data.times[near]
        expected = float(np.mean(np.exp(-10.0 * x[near])))
        se = times.std(ddof=1) / np.sqrt(times.size)
        assert abs(times.mean() - expected) <= 3.0 * se
        assert expected == pytest.approx(np.exp(-4.0), rel=0.06)

    def test_no_drop_is_plain_cox(self) -> None:
        """Without the hazard drop a full-data fit recovers the slope m."""
        data, _ = gen_counter(n=4000, b=0.0, seed=6)
        assert fit_cox(data).beta[0] == pytest.approx(10.0, abs=0.3)


class TestNonlinear:
    """Tests for gen_nonlinear."""

    @pytest.mark.parametrize("d", [1, 2, 5])
    def test_cube_fills_one_sixth(self, d: int) -> None:
        """(2h)^d / 2^d = 1/6."""
        h = nonlinear_half_width(d)
        assert h**d == pytest.approx(1.0 / 6.0)

    def test_truth_and_share(self) -> None:
        """About one sixth of the points lie in the cube."""
        data, truth = gen_nonlinear(n=6000, d=2, seed=3)
        share = truth.contains(data.x_subgp).mean()
        assert share == pytest.approx(1.0 / 6.0, abs=0.02)
        assert truth.dim == 2

    def test_hazard_inside_cube(self) -> None:
        """Inside the cube higher risk scores fail earlier."""
        data, truth = gen_nonlinear(n=2000, d=2, seed=4)
        inside = truth.contains(data.x_subgp)
        eta = 10.0 * data.x_subgp[inside].sum(axis=1)
        tau, _ = kendalltau(eta, -data.times[inside])
        assert tau >= 0.5


class TestPlainCox:
    """Tests for gen_plain_cox and censoring calibration."""

    def test_uncensored(self) -> None:
        """No censoring unless requested."""
        data = gen_plain_cox(200, [1.0, -1.0], seed=0)
        assert data.events.all()
        assert data.d_adjust == 2

    def test_censor_rate(self) -> None:
        """Realised censored share tracks the target."""
        data = gen_plain_cox(5000, [1.0, 0.5], censor_rate=0.4, seed=2)
        assert 1.0 - data.events.mean() == pytest.approx(0.4, abs=0.03)

    def test_log_rate_solves_mean(self) -> None:
        """Expected censored share at the solved rate equals the target."""
        eta = np.linspace(-2.0, 2.0, 50)
        log_rate = censoring_log_rate(eta, 0.25)
        share = np.mean(np.exp(log_rate) / (np.exp(log_rate) + np.exp(eta)))
        assert share == pytest.approx(0.25, abs=1e-8)

    def test_custom_bounds(self) -> None:
        """Features stay inside the requested box."""
        bounds = Region.from_pairs([(2.0, 3.0)])
        data = gen_plain_cox(100, [1.0], bounds=bounds, seed=1)
        assert bounds.contains(data.x_subgp).all()

    @pytest.mark.slow
    def test_zero_beta_unit_mean(self) -> None:
        """With beta = 0 failure times are unit exponentials."""
        data = gen_plain_cox(100_000, [0.0, 0.0], seed=3)
        se = data.times.std(ddof=1) / np.sqrt(data.n)
        assert abs(data.times.mean() - 1.0) <= 3.0 * se

    def test_invalid_rate(self) -> None:
        """Censored share must lie in [0, 1)."""
        with pytest.raises(InvalidArgumentError):
            gen_plain_cox(10, [1.0], censor_rate=1.0)


class TestSynthSpec:
    """Tests for SynthSpec and generate."""

    def test_generate_counter(self) -> None:
        """Counter specs use d = 1 and return a truth."""
        spec = SynthSpec(kind=SynthKind.COUNTER, n=50, d=1, params={"c": 0.5})
        data, truth = generate(spec)
        assert data.n == 50
        assert truth is not None and truth.lower == (0.5,)

    def test_generate_plain_cox(self) -> None:
        """Plain Cox data has no truth."""
        spec = SynthSpec(kind="plain_cox", n=40, d=3)
        data, truth = generate(spec)
        assert truth is None
        assert data.d_subgp == 3

    def test_counter_dimension(self) -> None:
        """Counter data rejects d != 1."""
        with pytest.raises(ValidationError):
            SynthSpec(kind=SynthKind.COUNTER, d=2)

    def test_beta_length(self) -> None:
        """plain_cox beta must match d."""
        with pytest.raises(ValidationError):
            SynthSpec(kind=SynthKind.PLAIN_COX, d=2, params={"beta": [1.0]})

    def test_generate_matches_function(self) -> None:
        """generate gives the same data as calling the generator."""
        spec = SynthSpec(kind=SynthKind.NONLINEAR, n=80, d=2, seed=9)
        data, _ = generate(spec)
        direct, _ = gen_nonlinear(80, 2, seed=9)
        np.testing.assert_array_equal(data.times, direct.times)
