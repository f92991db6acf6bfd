"""
Densities and their normalization constants.
"""
import numpy as np
import pytest
from scipy.integrate import dblquad
from scipy.special import gammaln

from checks.model_draws import change_of_variables_residual, draw_model
from density.constants import log_c, log_d, log_g, log_l, log_norm_constants
from density.joint import (
    DensityParams,
    log_density_perturbed,
    log_density_perturbed_gaussian,
    log_density_perturbed_laguerre_semidef,
    log_density_spectral,
    log_density_stockmann_seba,
    stockmann_seba_offset,
)
from ensembles.models import CouplingLaw, EnsembleSpec
from errors import ParameterError
from jacobi.types import SpectralMeasure
from randomness.rng import RngStream

UNIT_EXPONENTIAL = CouplingLaw(kind="custom_gamma", shape=1.0, scale=1.0)


class TestConstants:

    def test_c_single(self):
        assert log_c(2.0, 1) == pytest.approx(0.0)

    def test_g_at_beta_two(self):
        # prod_j Gamma(1 + j) = 1! 2!
        assert log_g(2.0, 2) == pytest.approx(np.log(2 * np.pi) + np.log(2.0))

    def test_empty_products(self):
        assert log_l(1.0, 0, 3.0) == 0.0
        assert log_d(2.0, 0, 4) == pytest.approx(0.0)

    def test_l_matches_single_gamma_integral(self):
        # n = 1: integral of x^(beta a/2) e^(-x/2) over (0, inf)
        beta, a = 2.0, 1.5
        expected = (0.5 * beta * a + 1.0) * np.log(2.0) + gammaln(1.0 + 0.5 * beta * a)
        assert log_l(beta, 1, a) == pytest.approx(expected)

    def test_constant_sets(self, gaussian_spec, definite_spec, semidefinite_spec):
        assert set(log_norm_constants(gaussian_spec)) == {"g", "c", "h"}
        assert set(log_norm_constants(definite_spec)) == {"l", "c", "q"}
        assert set(log_norm_constants(semidefinite_spec)) == {"l", "d", "t"}

    def test_h_at_beta_two_has_no_power_of_two(self):
        spec = EnsembleSpec(kind="gaussian", beta=2.0, n=3)
        consts = log_norm_constants(spec)
        assert consts["h"] == pytest.approx(consts["g"] + consts["c"])


class TestPerturbedDensity:

    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 4.0])
    def test_single_eigenvalue_value(self, beta):
        params = DensityParams(spec=EnsembleSpec(kind="gaussian", beta=beta, n=1), law=UNIT_EXPONENTIAL)
        assert log_density_perturbed(params, [1j]) == pytest.approx(-1.0 - 0.5 * np.log(2 * np.pi))

    def test_lower_half_plane(self, gaussian_spec, gamma_law):
        params = DensityParams(spec=gaussian_spec, law=gamma_law)
        assert log_density_perturbed(params, [1j, 2j, 1 + 1j, -0.5j]) == -np.inf

    def test_wrong_size(self, gaussian_spec, gamma_law):
        with pytest.raises(ParameterError):
            log_density_perturbed_gaussian(DensityParams(spec=gaussian_spec, law=gamma_law), [1j])

    def test_gaussian_single_integrates_to_one(self):
        params = DensityParams(spec=EnsembleSpec(kind="gaussian", beta=1.0, n=1), law=UNIT_EXPONENTIAL)
        total, _ = dblquad(
            lambda y, x: np.exp(log_density_perturbed(params, [complex(x, y)])),
            -np.inf, np.inf, 0.0, np.inf,
        )
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_definite_laguerre_single_integrates_to_one(self):
        spec = EnsembleSpec(kind="laguerre", beta=2.0, m=2, n=1)
        params = DensityParams(spec=spec, law=UNIT_EXPONENTIAL)
        total, _ = dblquad(
            lambda y, x: np.exp(log_density_perturbed(params, [complex(x, y)])),
            0.0, np.inf, 0.0, np.inf,
        )
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_semidefinite_off_manifold(self, semidefinite_spec, gamma_law):
        params = DensityParams(spec=semidefinite_spec, law=gamma_law)
        z = np.exp(1j * np.array([0.1, 0.2, 0.3]))
        assert log_density_perturbed_laguerre_semidef(params, z) == -np.inf

    def test_semidefinite_needs_rank_deficiency(self, definite_spec, gamma_law):
        with pytest.raises(ParameterError):
            log_density_perturbed_laguerre_semidef(DensityParams(spec=definite_spec, law=gamma_law), [1j])


class TestSpectralDensity:

    def test_semidefinite_without_zero_atom(self, semidefinite_spec):
        mu = SpectralMeasure([3.0, 2.0, 1.0], [0.2, 0.3, 0.5])
        assert log_density_spectral(semidefinite_spec, mu) == -np.inf

    def test_definite_negative_atom(self, definite_spec):
        mu = SpectralMeasure([3.0, 1.0, -1.0], [0.2, 0.3, 0.5])
        assert log_density_spectral(definite_spec, mu) == -np.inf


class TestChangeOfVariables:

    @pytest.mark.parametrize("seed", [1, 2, 3])
    @pytest.mark.parametrize("spec_name", ["gaussian_spec", "definite_spec", "semidefinite_spec"])
    def test_residual_vanishes(self, request, spec_name, seed, gamma_law):
        spec = request.getfixturevalue(spec_name)
        draw = draw_model(RngStream(seed), spec, gamma_law)
        assert abs(change_of_variables_residual(spec, gamma_law, draw)) < 1e-7

    def test_chi_half_coupling(self):
        spec = EnsembleSpec(kind="gaussian", beta=1.0, n=3)
        law = CouplingLaw(kind="chi_half")
        draw = draw_model(RngStream(31), spec, law)
        assert abs(change_of_variables_residual(spec, law, draw)) < 1e-7


class TestStockmannSeba:

    @pytest.mark.parametrize("beta", [1.0, 2.0, 4.0])
    def test_display_differs_by_power_of_two(self, beta):
        n, sigma = 3, 0.7
        params = DensityParams(
            spec=EnsembleSpec(kind="gaussian", beta=beta, n=n),
            law=CouplingLaw(kind="gamma_type", sigma=sigma),
        )
        z = [0.5 + 0.3j, -1.0 + 0.8j, 0.2 + 1.1j]
        diff = log_density_perturbed(params, z) - log_density_stockmann_seba(beta, n, sigma, z)
        assert diff == pytest.approx(-stockmann_seba_offset(beta, n), abs=1e-10)

    def test_offset_vanishes_at_beta_two(self):
        assert stockmann_seba_offset(2.0, 5) == 0.0
