"""
Analytic Jacobians against central finite differences.
"""
import numpy as np
import pytest

from errors import ParameterError, SingularJacobianError
from jacobi.types import SpectralMeasure
from perturbation.jacobians import (
    fd_jacobian_gaussian,
    fd_jacobian_laguerre_semidefinite,
    jacobian_gaussian,
    jacobian_laguerre_semidefinite,
    log_jacobian_gaussian,
)
from perturbation.maps import PerturbedSpectrum, forward_map


class TestGaussianJacobian:

    def test_single_atom(self):
        # z = lambda + i l: d(Re z, Im z)/d(lambda, l) is the identity
        mu = SpectralMeasure([0.4], [1.0])
        assert jacobian_gaussian(mu, 1.7, forward_map(mu, 1.7)) == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "lambdas,weights,l",
        [
            ([1.0, -1.0], [0.5, 0.5], 1.0),
            ([2.0, 0.3, -1.1], [0.2, 0.5, 0.3], 0.7),
            ([3.0, 1.0, -0.5, -2.0], [0.1, 0.4, 0.3, 0.2], 2.5),
        ],
    )
    def test_matches_finite_differences(self, lambdas, weights, l):
        mu = SpectralMeasure(lambdas, weights)
        exact = jacobian_gaussian(mu, l, forward_map(mu, l))
        assert fd_jacobian_gaussian(mu, l) / exact == pytest.approx(1.0, abs=1e-5)

    def test_coincident_points(self):
        mu = SpectralMeasure([1.0, -1.0], [0.5, 0.5])
        with pytest.raises(SingularJacobianError):
            log_jacobian_gaussian(mu, 1.0, PerturbedSpectrum([1j, 1j]))

    def test_coincidence_reports_multiplicity(self):
        mu = SpectralMeasure([2.0, 0.5, -1.0], [0.2, 0.3, 0.5])
        with pytest.raises(SingularJacobianError, match="multiplicity 2"):
            log_jacobian_gaussian(mu, 1.0, PerturbedSpectrum([2 + 1j, 0.5j, 2 + 1j]))

    def test_size_mismatch(self):
        mu = SpectralMeasure([1.0, -1.0], [0.5, 0.5])
        with pytest.raises(ParameterError):
            jacobian_gaussian(mu, 1.0, PerturbedSpectrum([1j]))


class TestRankDeficientJacobian:

    @pytest.mark.parametrize(
        "lambdas,weights,l",
        [
            ([0.0, 1.5], [0.4, 0.6], 1.2),
            ([2.0, 0.7, 0.0], [0.3, 0.3, 0.4], 0.9),
            ([4.0, 2.5, 1.0, 0.0], [0.25, 0.25, 0.25, 0.25], 1.5),
        ],
    )
    def test_matches_finite_differences(self, lambdas, weights, l):
        mu = SpectralMeasure(lambdas, weights)
        exact = jacobian_laguerre_semidefinite(mu, l, forward_map(mu, l))
        assert fd_jacobian_laguerre_semidefinite(mu, l) / exact == pytest.approx(1.0, abs=1e-5)

    def test_needs_zero_atom(self):
        mu = SpectralMeasure([2.0, 1.0], [0.5, 0.5])
        with pytest.raises(ParameterError):
            jacobian_laguerre_semidefinite(mu, 1.0, forward_map(mu, 1.0))
