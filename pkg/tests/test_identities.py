import numpy as np
import pytest

from checks.model_draws import draw_model
from errors import ParameterError
from jacobi.types import SpectralMeasure
from perturbation.identities import IdentityReport, identity_suite, laguerre_product_identities
from perturbation.maps import forward_map
from randomness.rng import RngStream


class TestIdentityReport:

    def test_pass_and_max(self):
        report = IdentityReport({"el": 1e-12, "sum": 3e-9})
        assert report.passed
        assert report.max_residual == 3e-9
        assert report.to_dict()["pass"] is True

    def test_non_finite_fails(self):
        assert not IdentityReport({"prodW": float("nan")}).passed


class TestIdentitySuite:

    def test_symmetric_pair(self):
        mu = SpectralMeasure([1.0, -1.0], [0.5, 0.5])
        report = identity_suite(mu, 1.0, forward_map(mu, 1.0))
        assert report.passed
        assert "w0" not in report.residuals

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_gaussian_draws(self, seed, gaussian_spec, gamma_law):
        draw = draw_model(RngStream(seed), gaussian_spec, gamma_law)
        report = identity_suite(draw.mu, draw.l, draw.z)
        assert report.passed, report.residuals

    def test_zero_atom_adds_w0(self):
        mu = SpectralMeasure([2.0, 0.0], [0.3, 0.7])
        report = identity_suite(mu, 0.8, forward_map(mu, 0.8))
        assert report.residuals["w0"] < 1e-10
        assert report.passed

    def test_size_mismatch(self):
        mu = SpectralMeasure([1.0, -1.0], [0.5, 0.5])
        with pytest.raises(ParameterError):
            identity_suite(mu, 1.0, forward_map(SpectralMeasure([0.0], [1.0]), 1.0))


class TestLaguerreProducts:

    @pytest.mark.parametrize("seed", [4, 5, 6])
    def test_rank_deficient_draws(self, seed, semidefinite_spec, gamma_law):
        draw = draw_model(RngStream(seed), semidefinite_spec, gamma_law)
        report = laguerre_product_identities(draw.bidiagonal, draw.mu, draw.z, draw.l)
        assert set(report.residuals) == {"product_i", "product_ii", "w0"}
        assert report.passed, report.residuals

    def test_without_spectrum(self, semidefinite_spec, gamma_law):
        draw = draw_model(RngStream(7), semidefinite_spec, gamma_law)
        report = laguerre_product_identities(draw.bidiagonal, draw.mu)
        assert "w0" not in report.residuals

    def test_needs_coupling_with_spectrum(self, semidefinite_spec, gamma_law):
        draw = draw_model(RngStream(8), semidefinite_spec, gamma_law)
        with pytest.raises(ParameterError):
            laguerre_product_identities(draw.bidiagonal, draw.mu, draw.z)

    def test_definite_factor_rejected(self, definite_spec, gamma_law):
        draw = draw_model(RngStream(9), definite_spec, gamma_law)
        with pytest.raises(ParameterError):
            laguerre_product_identities(draw.bidiagonal, draw.mu)

    def test_weight_identity_by_hand(self, semidefinite_spec, gamma_law):
        draw = draw_model(RngStream(10), semidefinite_spec, gamma_law)
        index = draw.mu.zero_atom()
        lam = np.delete(draw.mu.lambdas, index)
        y = draw.bidiagonal.upper[: lam.size]
        assert np.prod(y**2) == pytest.approx(draw.mu.weights[index] * np.prod(lam), rel=1e-8)
