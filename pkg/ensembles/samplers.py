"""
Ensemble Samplers - Tridiagonal beta-ensemble models, dense beta in {1, 2}
reference ensembles and the perturbed model J + i l E11
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ensembles.models import CouplingLaw, EnsembleSpec, PerturbedSample
from errors import ParameterError, UnsupportedEnsembleError
from jacobi.tridiagonal import bidiag_square
from jacobi.types import Bidiagonal, DenseHermitian, JacobiMatrix
from randomness.distributions import log_pdf, sample, sample_chi, sample_chi_tilde, sample_normal
from randomness.rng import RngStream

logger = logging.getLogger(__name__)


def sample_gbeta(rng: RngStream, beta: float, n: int) -> JacobiMatrix:
    """
    Draw from GbetaE_n: b_j ~ N(0, 1), a_j ~ chi-tilde_{beta(n-j)}, all independent.

    Args:
        rng: Random stream
        beta: Dyson index, any positive real
        n: Matrix order

    Returns:
        Jacobi matrix
    """
    if beta <= 0 or n < 1:
        raise ParameterError(f"need beta > 0 and n >= 1, got beta={beta}, n={n}")
    diag = sample_normal(rng, 1.0, n)
    offdiag = np.array([sample_chi_tilde(rng, beta * (n - j)) for j in range(1, n)])
    return JacobiMatrix(diag, offdiag)


def sample_lbeta(rng: RngStream, beta: float, m: int, n: int) -> Tuple[Bidiagonal, JacobiMatrix]:
    """
    Draw from LbetaE_(m,n) through its bidiagonal factor.

    x_j ~ chi_{beta(m-j+1)} and y_j ~ chi_{beta(n-j)}. When m < n the entries
    x_{m+1}.. and y_{m+1}.. are exact zeros, so J is the direct sum of an
    (m+1)x(m+1) Jacobi block and a zero block.

    Args:
        rng: Random stream
        beta: Dyson index
        m: Number of rows of the underlying Wishart factor
        n: Matrix order

    Returns:
        (B, J = B^T B)
    """
    if beta <= 0 or n < 1 or m < 0:
        raise ParameterError(f"need beta > 0, n >= 1, m >= 0, got beta={beta}, m={m}, n={n}")
    active = min(m, n)
    main = np.zeros(n)
    upper = np.zeros(n - 1)
    for j in range(1, active + 1):
        main[j - 1] = sample_chi(rng, beta * (m - j + 1))
    for j in range(1, min(active, n - 1) + 1):
        upper[j - 1] = sample_chi(rng, beta * (n - j))
    B = Bidiagonal(main, upper)
    return B, bidiag_square(B)


def _gaussian_entries(rng: RngStream, beta: int, shape: Tuple[int, int]) -> np.ndarray:
    """i.i.d. N(0, 1) (beta = 1) or N(0, I_2) (beta = 2) entries."""
    size = shape[0] * shape[1]
    real = rng.normal(size).reshape(shape)
    if beta == 1:
        return real
    return real + 1j * rng.normal(size).reshape(shape)


def sample_dense(
    rng: RngStream, kind: str, beta: int, n: int, m: Optional[int] = None
) -> DenseHermitian:
    """
    Dense GOE/GUE ((Y + Y*)/2, Y n x n) or LOE/LUE (Y* Y, Y m x n) matrix.

    Raises:
        UnsupportedEnsembleError: beta outside {1, 2}
    """
    if beta not in (1, 2):
        raise UnsupportedEnsembleError(f"dense ensembles exist for beta in {{1, 2}}, got beta={beta}")
    if kind == "gaussian":
        Y = _gaussian_entries(rng, beta, (n, n))
        X = 0.5 * (Y + Y.conj().T)
    elif kind == "laguerre":
        if m is None or m < 1:
            raise ParameterError("dense laguerre ensembles need m >= 1")
        Y = _gaussian_entries(rng, beta, (m, n))
        X = Y.conj().T @ Y
        X = 0.5 * (X + X.conj().T)
    else:
        raise ParameterError(f"unknown ensemble kind '{kind}'")
    return DenseHermitian(X, beta)


def sample_coupling_row(rng: RngStream, beta: int, n: int, sigma: float = 1.0) -> np.ndarray:
    """Row L with N(0, sigma I_beta) entries; Gamma = L* L has ||Gamma||_HS = sum |L_j|^2."""
    return sigma * _gaussian_entries(rng, beta, (1, n))[0]


def sample_coupling(rng: RngStream, law: CouplingLaw, beta: float, n: int) -> float:
    """Draw the perturbation strength l from F."""
    return float(sample(rng, law.dist(beta, n)))


def coupling_log_density(law: CouplingLaw, beta: float, n: int, l: float) -> float:
    """log F(l); -inf for l <= 0."""
    return float(log_pdf(law.dist(beta, n), l))


def sample_jacobi(rng: RngStream, spec: EnsembleSpec) -> Tuple[JacobiMatrix, Optional[Bidiagonal]]:
    """Model Jacobi matrix for ``spec`` plus its bidiagonal factor when Laguerre."""
    if spec.kind == "gaussian":
        return sample_gbeta(rng, spec.beta, spec.n), None
    B, J = sample_lbeta(rng, spec.beta, spec.m, spec.n)
    return J, B


def sample_perturbed(rng: RngStream, spec: EnsembleSpec, law: CouplingLaw) -> PerturbedSample:
    """
    Draw J from the model and an independent l from F.

    Args:
        rng: Random stream
        spec: Ensemble
        law: Coupling law

    Returns:
        PerturbedSample representing J + i l E11
    """
    J, B = sample_jacobi(rng, spec)
    l = sample_coupling(rng, law, spec.beta, spec.n)
    return PerturbedSample(J, l, B)
