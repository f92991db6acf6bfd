import numpy as np
import pytest

from jacobi.tridiagonal import bidiag_square
from jacobi.types import Bidiagonal
from perturbation.configuration import (
    config_gaussian,
    config_laguerre_definite,
    config_laguerre_semidefinite,
    config_negative_count,
    config_psd_corollary,
)
from perturbation.maps import perturbed_eigenvalues


def polar(radii, angles):
    return np.asarray(radii) * np.exp(1j * np.asarray(angles))


class TestGaussian:

    def test_open_upper_half_plane(self):
        assert config_gaussian([1 + 1j, -2 + 0.1j])

    def test_real_point_excluded(self):
        assert not config_gaussian([1 + 1j, 2.0 + 0j])

    def test_lower_point_excluded(self):
        assert not config_gaussian([1 - 1e-3j])


class TestLaguerre:

    def test_definite_inside(self):
        assert config_laguerre_definite(polar([1.0, 2.0], [0.3, 0.4]))

    def test_definite_argument_sum_too_large(self):
        assert not config_laguerre_definite(polar([1.0, 2.0], [0.9, 0.9]))

    def test_semidefinite_on_constraint(self):
        assert config_laguerre_semidefinite(polar([1.0, 3.0, 0.5], [0.2, 0.5, np.pi / 2 - 0.7]))

    def test_semidefinite_off_constraint(self):
        assert not config_laguerre_semidefinite(polar([1.0, 3.0], [0.2, 0.5]))

    def test_semidefinite_tolerance(self):
        z = polar([1.0, 1.0], [0.5, np.pi / 2 - 0.5 + 1e-6])
        assert not config_laguerre_semidefinite(z, tol=1e-8)
        assert config_laguerre_semidefinite(z, tol=1e-5)


class TestCorollary:

    def test_zeros_have_zero_argument(self):
        assert config_psd_corollary([0.0, 0.0, 1j])

    def test_closed_half_plane(self):
        assert config_psd_corollary([2.0 + 0j, 1 + 0.5j])

    def test_exceeds_bound(self):
        assert not config_psd_corollary(polar([1.0, 1.0], [1.0, 1.0]))

    def test_lower_half_plane(self):
        assert not config_psd_corollary([1 - 0.1j])


class TestNegativeCount:

    @pytest.mark.parametrize("s", [0, 1, 2])
    def test_window(self, s):
        total = np.pi / 2 + np.pi * s - 0.1
        pieces = np.full(s + 1, total / (s + 1))
        z = polar(np.ones(s + 1), pieces)
        assert config_negative_count(z, s)
        assert not config_negative_count(z, s + 1)

    def test_negative_s(self):
        assert not config_negative_count([1j], -1)


class TestReducibleSpectra:

    def test_roundoff_zero_counts_as_zero(self):
        z = [8.85 + 0.22j, 4.64 + 0j, -3.3e-16 + 0j]
        assert config_psd_corollary(z)

    def test_roundoff_zero_in_argument_window(self):
        assert config_negative_count([1 + 1j, -1e-17 + 0j], 0)

    def test_singular_decoupled_block(self):
        # J = B^T B splits into [x_1^2] and a singular 2x2 block
        J = bidiag_square(Bidiagonal([2.97, 0.92, 0.0], [0.0, 1.95]))
        z, _ = perturbed_eigenvalues(J, 0.22)
        assert np.count_nonzero(z.z == 0) == 1
        assert config_psd_corollary(z)

    def test_negative_real_point_still_rejected(self):
        assert not config_psd_corollary([1 + 1j, -0.5 + 0j])
