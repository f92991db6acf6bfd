"""
Forward and inverse maps between (mu, l) and the perturbed spectrum.

Ground truth: numpy.linalg.eigvals on the dense matrix J + i l E11.
"""
import numpy as np
import pytest

from ensembles.samplers import sample_gbeta, sample_lbeta
from errors import InconsistentSpectrumError, ParameterError
from jacobi.spectral import spectral_measure
from jacobi.types import JacobiMatrix, SpectralMeasure
from perturbation.maps import (
    PerturbedSpectrum,
    canonical_order,
    eigenvalues_direct,
    forward_map,
    inverse_map,
    match_spectra,
    perturbed_eigenvalues,
    split_zero_eigenvalues,
)
from randomness.rng import RngStream


def dense_eigenvalues(J: JacobiMatrix, l: float) -> np.ndarray:
    dense = J.to_dense().astype(complex)
    dense[0, 0] += 1j * l
    return np.linalg.eigvals(dense)


class TestPerturbedSpectrum:

    def test_canonical_order(self):
        z = canonical_order([1 + 1j, 2 + 0.5j, 1 + 3j])
        np.testing.assert_array_equal(z, [2 + 0.5j, 1 + 3j, 1 + 1j])

    def test_polar_accessors(self):
        s = PerturbedSpectrum([1j, 1 + 1j])
        np.testing.assert_allclose(s.radii, [np.sqrt(2), 1.0])
        np.testing.assert_allclose(s.arguments, [np.pi / 4, np.pi / 2])
        assert s.imag_sum == pytest.approx(2.0)

    def test_list_roundtrip(self):
        s = PerturbedSpectrum([0.5 + 1j, -1 + 2j])
        np.testing.assert_array_equal(PerturbedSpectrum.from_list(s.to_list()).z, s.z)

    def test_empty_rejected(self):
        with pytest.raises(ParameterError):
            PerturbedSpectrum([])


class TestForwardMap:

    def test_single_atom(self):
        z = forward_map(SpectralMeasure([0.7], [1.0]), 2.0)
        np.testing.assert_allclose(z.z, [0.7 + 2.0j])

    def test_two_symmetric_atoms(self):
        # roots of z^2 - i z - 1
        z = forward_map(SpectralMeasure([1.0, -1.0], [0.5, 0.5]), 1.0)
        np.testing.assert_allclose(z.z, [np.sqrt(3) / 2 + 0.5j, -np.sqrt(3) / 2 + 0.5j], atol=1e-14)

    def test_non_positive_coupling(self):
        with pytest.raises(ParameterError):
            forward_map(SpectralMeasure([0.0], [1.0]), 0.0)

    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 4.0])
    def test_matches_dense_eigenvalues(self, beta):
        J = sample_gbeta(RngStream(100), beta, 6)
        l = 1.3
        z = forward_map(spectral_measure(J), l)
        distance, _ = match_spectra(z.z, dense_eigenvalues(J, l))
        assert distance < 1e-8 * max(1.0, J.norm(), l)
        assert np.all(z.z.imag > 0)

    def test_trace_and_coupling(self):
        J = sample_gbeta(RngStream(101), 2.0, 5)
        z = forward_map(spectral_measure(J), 0.8)
        assert z.imag_sum == pytest.approx(0.8, rel=1e-12)
        assert z.z.real.sum() == pytest.approx(J.diag.sum(), abs=1e-10)


class TestDirectRoute:

    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_two_routes_agree(self, n):
        J = sample_gbeta(RngStream(110 + n), 2.0, n)
        l = 0.9
        direct = eigenvalues_direct(J, l)
        forward = forward_map(spectral_measure(J), l)
        distance, _ = match_spectra(direct.z, forward.z)
        assert distance < 1e-8 * max(1.0, J.norm(), l)


class TestInverseMap:

    @pytest.mark.parametrize("beta", [1.0, 2.0, 4.0])
    def test_roundtrip(self, beta):
        mu = spectral_measure(sample_gbeta(RngStream(120), beta, 5))
        back, l = inverse_map(forward_map(mu, 2.0))
        assert l == pytest.approx(2.0, rel=1e-12)
        np.testing.assert_allclose(back.lambdas, mu.lambdas, atol=1e-8)
        np.testing.assert_allclose(back.weights, mu.weights, atol=1e-8)

    def test_single_point(self):
        mu, l = inverse_map(PerturbedSpectrum([0.3 + 0.4j]))
        np.testing.assert_allclose(mu.lambdas, [0.3])
        np.testing.assert_allclose(mu.weights, [1.0])
        assert l == pytest.approx(0.4)

    def test_arbitrary_upper_half_plane_points(self):
        z = PerturbedSpectrum([1.0 + 0.2j, -0.5 + 1.5j, 2.0 + 0.05j])
        mu, l = inverse_map(z)
        distance, _ = match_spectra(forward_map(mu, l).z, z.z)
        assert distance < 1e-9

    def test_lower_half_plane_rejected(self):
        with pytest.raises(InconsistentSpectrumError):
            inverse_map(PerturbedSpectrum([1.0 + 1j, 0.5 - 0.1j]))

    def test_real_point_rejected(self):
        with pytest.raises(InconsistentSpectrumError):
            inverse_map(PerturbedSpectrum([1.0 + 1j, 0.5 + 0j]))


class TestRankDeficient:

    def test_structural_zeros(self):
        B, J = sample_lbeta(RngStream(130), 2.0, 2, 5)
        z, mu = perturbed_eigenvalues(J, 1.1)
        assert z.n == 5
        assert np.count_nonzero(z.z == 0) == 2
        assert mu.n == 3

    def test_split_zero_eigenvalues(self):
        _, J = sample_lbeta(RngStream(131), 1.0, 3, 6)
        z, _ = perturbed_eigenvalues(J, 0.7)
        nonzero, count = split_zero_eigenvalues(z, J.norm(), expected=2)
        assert count == 2 and nonzero.n == 4
        assert np.sum(nonzero.arguments) == pytest.approx(np.pi / 2, abs=1e-8)

    def test_split_wrong_count(self):
        with pytest.raises(InconsistentSpectrumError):
            split_zero_eigenvalues(PerturbedSpectrum([0.0, 1 + 1j]), 1.0, expected=2)

    def test_perturbed_eigenvalues_full_rank(self):
        J = sample_gbeta(RngStream(132), 1.0, 4)
        z, mu = perturbed_eigenvalues(J, 0.5)
        distance, _ = match_spectra(z.z, dense_eigenvalues(J, 0.5))
        assert distance < 1e-8 * max(1.0, J.norm())
        assert mu.n == 4
