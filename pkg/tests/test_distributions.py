"""
Samplers, densities and CDFs of the basic laws.

Reference values come from scipy.stats.
"""
import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from errors import ParameterError
from randomness.distributions import (
    LOG_SQRT_2PI,
    DistSpec,
    cdf,
    log_pdf,
    numeric_cdf,
    sample,
    sample_chi,
    sample_chi_tilde,
    sample_gamma,
    sample_normal,
    total_mass,
)
from randomness.rng import RngStream


class TestRngStream:

    def test_same_seed_same_draws(self):
        a = RngStream(7, (1, 2)).normal(5)
        b = RngStream(7, (1, 2)).normal(5)
        np.testing.assert_array_equal(a, b)

    def test_substreams_differ(self):
        root = RngStream(7)
        assert not np.array_equal(root.substream(0).normal(5), root.substream(1).normal(5))

    def test_substream_is_stable(self):
        np.testing.assert_array_equal(
            RngStream(7).substream(3).uniform(4), RngStream(7, (3,)).uniform(4)
        )

    def test_uniform_open_interval(self):
        u = RngStream(1).uniform(10000)
        assert np.all(u > 0) and np.all(u < 1)

    def test_negative_seed_rejected(self):
        with pytest.raises(ParameterError):
            RngStream(-1)

    def test_negative_substream_rejected(self):
        with pytest.raises(ParameterError):
            RngStream(3).substream(-2)


class TestDistSpec:

    def test_missing_parameter(self):
        with pytest.raises(ValidationError):
            DistSpec(kind="chi")

    def test_non_positive_parameter(self):
        with pytest.raises(ValidationError):
            DistSpec.gamma(0.0, 1.0)

    def test_sampler_rejects_bad_shape(self, rng):
        with pytest.raises(ParameterError):
            sample_gamma(rng, -1.0, 1.0, 3)


class TestLogPdf:

    def test_normal_at_zero(self):
        assert log_pdf(DistSpec.normal(1.0), 0.0) == pytest.approx(-LOG_SQRT_2PI)

    @pytest.mark.parametrize("k", [0.5, 1.0, 3.7, 10.0])
    def test_chi_matches_scipy(self, k):
        x = np.array([0.1, 0.8, 2.5])
        np.testing.assert_allclose(log_pdf(DistSpec.chi(k), x), stats.chi.logpdf(x, k), rtol=1e-12)

    @pytest.mark.parametrize("k", [0.5, 2.0, 10.0])
    def test_chi_tilde_is_scaled_chi(self, k):
        x = np.array([0.2, 1.0, 3.0])
        expected = stats.chi.logpdf(np.sqrt(2.0) * x, k) + 0.5 * np.log(2.0)
        np.testing.assert_allclose(log_pdf(DistSpec.chi_tilde(k), x), expected, rtol=1e-12)

    def test_gamma_matches_scipy(self):
        x = np.array([0.05, 1.0, 7.0])
        np.testing.assert_allclose(
            log_pdf(DistSpec.gamma(2.5, 1.5), x), stats.gamma.logpdf(x, 2.5, scale=1.5), rtol=1e-12
        )

    def test_outside_support(self):
        assert log_pdf(DistSpec.chi_squared(3.0), -1.0) == -np.inf

    @pytest.mark.parametrize(
        "dist",
        [DistSpec.normal(2.0), DistSpec.chi(0.5), DistSpec.chi_tilde(3.7), DistSpec.chi_squared(1.0), DistSpec.gamma(10.0, 0.5)],
    )
    def test_total_mass_is_one(self, dist):
        assert total_mass(dist) == pytest.approx(1.0, abs=1e-6)


class TestCdf:

    def test_chi_squared_matches_scipy(self):
        x = np.array([0.1, 1.0, 4.0])
        np.testing.assert_allclose(cdf(DistSpec.chi_squared(3.0), x), stats.chi2.cdf(x, 3.0), rtol=1e-12)

    def test_gamma_matches_scipy(self):
        x = np.array([0.1, 1.0, 4.0])
        np.testing.assert_allclose(
            cdf(DistSpec.gamma(0.3, 2.0), x), stats.gamma.cdf(x, 0.3, scale=2.0), rtol=1e-12
        )

    def test_numeric_cdf_agrees_with_closed_form(self):
        dist = DistSpec.chi(3.7)
        x = np.linspace(0.05, 5.0, 25)
        np.testing.assert_allclose(numeric_cdf(dist)(x), cdf(dist, x), atol=1e-5)


class TestSamplers:

    def test_gamma_mean(self, rng):
        draws = sample_gamma(rng, 2.5, 1.5, 20000)
        assert abs(draws.mean() - 3.75) < 0.1

    def test_tiny_shape_stays_positive(self, rng):
        draws = sample_gamma(rng, 0.05, 1.0, 2000)
        assert np.all(draws > 0) and np.all(np.isfinite(draws))

    def test_chi_second_moment(self, rng):
        draws = sample_chi(rng, 3.7, 20000)
        # E chi_k^2 = k, Var chi_k^2 = 2k
        assert abs((draws**2).mean() - 3.7) < 5 * np.sqrt(2 * 3.7 / 20000)

    def test_chi_tilde_second_moment(self, rng):
        draws = sample_chi_tilde(rng, 4.0, 20000)
        assert abs((draws**2).mean() - 2.0) < 5 * np.sqrt(2 * 4.0 / 20000) / 2

    @pytest.mark.parametrize("dist", [DistSpec.chi(0.5), DistSpec.gamma(10.0, 1.0), DistSpec.normal(3.0)])
    def test_ks_against_exact_cdf(self, dist):
        draws = sample(RngStream(2024), dist, 5000)
        result = stats.kstest(draws, lambda x: cdf(dist, x))
        assert result.pvalue > 1e-3

    def test_normal_scale(self, rng):
        draws = sample_normal(rng, 2.0, 20000)
        assert abs(draws.std() - 2.0) < 0.05

    def test_normal_rejects_bad_sigma(self, rng):
        with pytest.raises(ParameterError):
            sample_normal(rng, 0.0, 3)

    def test_scalar_draw(self, rng):
        assert np.ndim(sample(rng, DistSpec.chi_squared(2.0))) == 0
