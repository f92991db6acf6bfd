import numpy as np
import pytest
from pydantic import ValidationError

from ensembles.models import CouplingLaw, EnsembleSpec, PerturbedSample
from ensembles.samplers import (
    coupling_log_density,
    sample_coupling_row,
    sample_dense,
    sample_gbeta,
    sample_jacobi,
    sample_lbeta,
    sample_perturbed,
)
from errors import ParameterError, UnsupportedEnsembleError
from jacobi.types import JacobiMatrix
from randomness.distributions import sample
from randomness.rng import RngStream


class TestEnsembleSpec:

    def test_laguerre_needs_m(self):
        with pytest.raises(ValidationError):
            EnsembleSpec(kind="laguerre", beta=1.0, n=3)

    def test_gaussian_ignores_m(self):
        assert EnsembleSpec(kind="gaussian", beta=2.0, n=3, m=7).m is None

    def test_non_positive_beta(self):
        with pytest.raises(ValidationError):
            EnsembleSpec(kind="gaussian", beta=0.0, n=3)

    def test_derived_quantities(self, semidefinite_spec, definite_spec):
        assert semidefinite_spec.is_semidefinite
        assert semidefinite_spec.active_size == 3
        assert semidefinite_spec.a == pytest.approx(3.0 + 1.0 - 1.0)
        assert not definite_spec.is_semidefinite
        assert definite_spec.active_size == 3
        assert definite_spec.a == pytest.approx(2.0 + 1.0 - 2.0)

    def test_a_undefined_for_gaussian(self, gaussian_spec):
        with pytest.raises(ParameterError):
            gaussian_spec.a

    def test_parses_json_shape(self):
        spec = EnsembleSpec.model_validate({"kind": "gaussian", "beta": 2, "n": 8})
        assert spec.n == 8 and spec.beta == 2.0


class TestCouplingLaw:

    def test_gamma_type_law(self):
        dist = CouplingLaw(kind="gamma_type", sigma=0.5).dist(2.0, 3)
        assert dist.kind == "gamma" and dist.shape == 3.0 and dist.scale == pytest.approx(0.5)

    def test_chi_half_law(self):
        dist = CouplingLaw(kind="chi_half").dist(1.0, 4)
        assert dist.kind == "chi" and dist.k == 2.0

    def test_custom_needs_shape_and_scale(self):
        with pytest.raises(ValidationError):
            CouplingLaw(kind="custom_gamma", shape=1.0)

    def test_gamma_type_mean(self, rng):
        # l ~ sigma^2 chi^2_{beta n}
        draws = sample(rng, CouplingLaw(sigma=1.0).dist(2.0, 3), 20000)
        assert abs(draws.mean() - 6.0) < 5 * np.sqrt(12.0 / 20000)

    def test_log_density_outside_support(self, gamma_law):
        assert coupling_log_density(gamma_law, 2.0, 3, -1.0) == -np.inf


class TestSamplers:

    def test_gbeta_shape(self, rng):
        J = sample_gbeta(rng, 2.0, 5)
        assert J.n == 5
        assert np.all(J.offdiag > 0)

    def test_gbeta_offdiag_law(self):
        # a_1^2 ~ chi-tilde^2_{beta(n-1)} has mean beta(n-1)/2
        root = RngStream(40)
        squares = np.array([sample_gbeta(root.substream(i), 2.0, 4).offdiag[0] ** 2 for i in range(4000)])
        assert abs(squares.mean() - 3.0) < 5 * np.sqrt(3.0 / 4000)

    def test_lbeta_definite(self, rng):
        B, J = sample_lbeta(rng, 1.0, 5, 3)
        assert np.all(B.main > 0) and np.all(B.upper > 0)
        np.testing.assert_allclose(J.to_dense(), B.to_dense().T @ B.to_dense(), atol=1e-12)

    def test_lbeta_rank_deficient_structure(self, rng):
        B, J = sample_lbeta(rng, 2.0, 2, 5)
        assert np.count_nonzero(B.main) == 2
        assert J.leading_block().n == 3
        assert np.all(J.diag[3:] == 0.0)
        assert np.all(J.offdiag[2:] == 0.0)

    def test_lbeta_m_zero_is_zero_matrix(self, rng):
        _, J = sample_lbeta(rng, 1.0, 0, 3)
        assert np.all(J.diag == 0.0) and np.all(J.offdiag == 0.0)

    def test_dense_unsupported_beta(self, rng):
        with pytest.raises(UnsupportedEnsembleError):
            sample_dense(rng, "gaussian", 4, 3)

    def test_dense_hermitian(self, rng):
        H = sample_dense(rng, "laguerre", 2, 4, m=6)
        np.testing.assert_allclose(H.matrix, H.matrix.conj().T)
        assert np.linalg.eigvalsh(H.matrix).min() > 0

    def test_coupling_row(self, rng):
        row = sample_coupling_row(rng, 2, 5, sigma=2.0)
        assert row.shape == (5,) and np.iscomplexobj(row)

    def test_sample_jacobi_dispatch(self, rng, gaussian_spec, definite_spec):
        J, B = sample_jacobi(rng, gaussian_spec)
        assert B is None and J.n == 4
        J, B = sample_jacobi(rng, definite_spec)
        assert B is not None and J.n == 3

    def test_perturbed_sample_is_deterministic(self, gaussian_spec, gamma_law):
        a = sample_perturbed(RngStream(5), gaussian_spec, gamma_law)
        b = sample_perturbed(RngStream(5), gaussian_spec, gamma_law)
        np.testing.assert_array_equal(a.jacobi.diag, b.jacobi.diag)
        assert a.l == b.l > 0

    def test_perturbed_sample_rejects_bad_coupling(self):
        with pytest.raises(ParameterError):
            PerturbedSample(JacobiMatrix([0.0], []), 0.0)
