"""
Joint Densities - Log-densities of spectral measures (lambda, w) and of the
perturbed eigenvalues z, with exact normalization

Weight chart: the last weight is dependent (w_n), or w_0 at the zero atom in
the rank-deficient Laguerre case. Every function returns -inf outside its
domain instead of raising.
"""

import logging
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.special import gammaln

from density.constants import LOG2, log_c, log_g, log_norm_constants
from ensembles.models import CouplingLaw, EnsembleSpec
from ensembles.samplers import coupling_log_density
from errors import ParameterError
from jacobi.types import SpectralMeasure
from perturbation.configuration import (
    config_gaussian,
    config_laguerre_definite,
    config_laguerre_semidefinite,
)
from perturbation.maps import PerturbedSpectrum

logger = logging.getLogger(__name__)

SpectrumLike = Union[PerturbedSpectrum, Sequence[complex], np.ndarray]

NEAR_CANCELLATION = 1e-12


class DensityParams(BaseModel):
    """Ensemble plus coupling law; ``a`` is derived for Laguerre."""

    model_config = ConfigDict(frozen=True)

    spec: EnsembleSpec
    law: CouplingLaw

    @model_validator(mode="after")
    def _check_integrable(self) -> "DensityParams":
        if self.spec.kind == "laguerre" and 0.5 * self.spec.beta * self.spec.a <= -1.0:
            raise ValueError("laguerre density needs beta a / 2 > -1")
        return self

    @property
    def a(self) -> float:
        return self.spec.a


def _points(z: SpectrumLike) -> np.ndarray:
    if isinstance(z, PerturbedSpectrum):
        return z.z
    return np.atleast_1d(np.asarray(z, dtype=complex))


def _log_vandermonde(values: np.ndarray) -> float:
    """sum_{j<k} log |v_j - v_k|."""
    if values.size < 2:
        return 0.0
    iu = np.triu_indices(values.size, k=1)
    with np.errstate(divide="ignore"):
        return float(np.log(np.abs(values[:, None] - values[None, :])[iu]).sum())


def _log_pair_terms(z: np.ndarray, beta: float) -> float:
    """
    (beta/2 - 1) sum_{j,k} log |z_j - conj z_k| + 2 sum_{j<k} log |z_j - z_k|.

    The diagonal of the first sum is log(2 Im z_j); off-diagonal pairs count twice.
    """
    conj_pairs = float(np.log(2.0 * z.imag).sum())
    if z.size > 1:
        iu = np.triu_indices(z.size, k=1)
        conj_pairs += 2.0 * float(np.log(np.abs(z[:, None] - z.conj()[None, :])[iu]).sum())
    return (0.5 * beta - 1.0) * conj_pairs + 2.0 * _log_vandermonde(z)


def _log_coupling_factor(params: DensityParams, l: float) -> float:
    """log F(l) - (beta n/2 - 1) log l."""
    beta, n = params.spec.beta, params.spec.n
    return coupling_log_density(params.law, beta, n, l) - (0.5 * beta * n - 1.0) * np.log(l)


def log_density_spectral(spec: EnsembleSpec, mu: SpectralMeasure) -> float:
    """
    Joint log-density of (lambda, w) for the ensemble's spectral measure.

    Args:
        spec: Ensemble
        mu: Spectral measure; n atoms, or m+1 atoms with one at zero when m < n

    Returns:
        Log-density with respect to dlambda dw (dependent weight dropped), or -inf
    """
    beta, n = spec.beta, spec.n
    lam, w = mu.lambdas, mu.weights
    consts = log_norm_constants(spec)

    if spec.kind == "gaussian":
        if mu.n != n:
            raise ParameterError(f"expected {n} atoms, got {mu.n}")
        return (
            -consts["g"] - consts["c"]
            - 0.5 * float((lam**2).sum())
            + beta * _log_vandermonde(lam)
            + (0.5 * beta - 1.0) * float(np.log(w).sum())
        )

    a = spec.a
    if not spec.is_semidefinite:
        if mu.n != n:
            raise ParameterError(f"expected {n} atoms, got {mu.n}")
        if np.any(lam <= 0):
            return -np.inf
        return (
            -consts["l"] - consts["c"]
            + float((0.5 * beta * a * np.log(lam) - 0.5 * lam).sum())
            + beta * _log_vandermonde(lam)
            + (0.5 * beta - 1.0) * float(np.log(w).sum())
        )

    m = spec.m
    if mu.n != m + 1:
        raise ParameterError(f"expected {m + 1} atoms, got {mu.n}")
    index = mu.zero_atom()
    if index is None:
        return -np.inf
    keep = np.arange(mu.n) != index
    lam_nz, w_nz, w0 = lam[keep], w[keep], w[index]
    if np.any(lam_nz <= 0):
        return -np.inf
    return (
        -consts["l"] - consts["d"]
        + float((0.5 * beta * a * np.log(lam_nz) - 0.5 * lam_nz).sum())
        + beta * _log_vandermonde(lam_nz)
        + (0.5 * beta * (n - m) - 1.0) * np.log(w0)
        + (0.5 * beta - 1.0) * float(np.log(w_nz).sum())
    )


def log_density_perturbed_gaussian(params: DensityParams, z: SpectrumLike) -> float:
    """
    Log-density of the perturbed Gaussian spectrum with respect to d^2 z_1..d^2 z_n.

    Args:
        params: Gaussian ensemble and coupling law
        z: n eigenvalues

    Returns:
        Log-density, -inf unless every Im z_j > 0
    """
    pts = _points(z)
    spec = params.spec
    if pts.size != spec.n:
        raise ParameterError(f"expected {spec.n} eigenvalues, got {pts.size}")
    if not config_gaussian(pts):
        return -np.inf
    y = pts.imag
    l = float(y.sum())
    cross = 0.5 * (l**2 - float((y**2).sum()))
    return (
        -log_norm_constants(spec)["h"]
        - 0.5 * float((pts.real**2).sum())
        - cross
        + _log_pair_terms(pts, spec.beta)
        + _log_coupling_factor(params, l)
    )


def _log_real_product(pts: np.ndarray) -> float:
    """log Re prod z_j from moduli and the argument sum."""
    cosine = np.cos(float(np.angle(pts).sum()))
    if cosine <= 0:
        return -np.inf
    if cosine < NEAR_CANCELLATION:
        logger.warning(f"Re prod z is nearly cancelled (cos of argument sum {cosine:.3e})")
    return float(np.log(np.abs(pts)).sum()) + np.log(cosine)


def log_density_perturbed_laguerre(params: DensityParams, z: SpectrumLike) -> float:
    """
    Log-density of the perturbed positive-definite Laguerre spectrum (m >= n)
    with respect to d^2 z.
    """
    pts = _points(z)
    spec = params.spec
    if spec.kind != "laguerre" or spec.is_semidefinite:
        raise ParameterError("definite laguerre density needs m >= n")
    if pts.size != spec.n:
        raise ParameterError(f"expected {spec.n} eigenvalues, got {pts.size}")
    if not config_laguerre_definite(pts):
        return -np.inf
    log_re_prod = _log_real_product(pts)
    if not np.isfinite(log_re_prod):
        return -np.inf
    l = float(pts.imag.sum())
    return (
        -log_norm_constants(spec)["q"]
        - 0.5 * float(pts.real.sum())
        + 0.5 * spec.beta * params.a * log_re_prod
        + _log_pair_terms(pts, spec.beta)
        + _log_coupling_factor(params, l)
    )


def log_density_perturbed_laguerre_semidef(
    params: DensityParams, z_nonzero: SpectrumLike, tol: float = 1e-8
) -> float:
    """
    Log-density of the m+1 non-zero eigenvalues in the rank-deficient case.

    The reference measure is dr_1..dr_{m+1} dtheta_1..dtheta_m; the last
    argument is pi/2 minus the others.

    Args:
        params: Laguerre ensemble with m < n and coupling law
        z_nonzero: The m+1 non-zero eigenvalues
        tol: Tolerance on sum Arg z_j = pi/2

    Returns:
        Log-density, -inf off the constraint manifold
    """
    pts = _points(z_nonzero)
    spec = params.spec
    if not spec.is_semidefinite:
        raise ParameterError("rank-deficient density needs laguerre with m < n")
    m, n, beta = spec.m, spec.n, spec.beta
    if pts.size != m + 1:
        raise ParameterError(f"expected {m + 1} non-zero eigenvalues, got {pts.size}")
    if not config_laguerre_semidefinite(pts, tol):
        return -np.inf
    l = float(pts.imag.sum())
    return (
        -log_norm_constants(spec)["t"]
        + _log_pair_terms(pts, beta)
        - 0.5 * float(pts.real.sum())
        + 0.5 * beta * (n - m - 1) * float(np.log(np.abs(pts)).sum())
        + _log_coupling_factor(params, l)
    )


def log_density_perturbed(params: DensityParams, z: SpectrumLike, tol: float = 1e-8) -> float:
    """Dispatch on the ensemble; in the rank-deficient case ``z`` holds the non-zero eigenvalues."""
    spec = params.spec
    if spec.kind == "gaussian":
        return log_density_perturbed_gaussian(params, z)
    if spec.is_semidefinite:
        return log_density_perturbed_laguerre_semidef(params, z, tol)
    return log_density_perturbed_laguerre(params, z)


def log_density_stockmann_seba(beta: float, n: int, sigma: float, z: SpectrumLike) -> float:
    """
    Closed form of the Gaussian perturbed density when the coupling row has
    N(0, sigma I_beta) entries, as traditionally displayed.

    Its constant lacks 2^{n(beta/2 - 1)} relative to the exact density;
    the two agree at beta = 2.
    """
    pts = _points(z)
    if not config_gaussian(pts):
        return -np.inf
    y = pts.imag
    l = float(y.sum())
    k = 0.5 * beta * n
    log_const = 2.0 * k * np.log(np.sqrt(2.0) * sigma) + float(gammaln(k)) + log_c(beta, n) + log_g(beta, n)
    return (
        -log_const
        + _log_pair_terms(pts, beta)
        - 0.5 * float((pts.real**2).sum())
        - 0.5 * (l**2 - float((y**2).sum()))
        - l / (2.0 * sigma**2)
    )


def stockmann_seba_offset(beta: float, n: int) -> float:
    """log of the power of two separating the display from the exact density."""
    return n * (0.5 * beta - 1.0) * LOG2


def log_density_chi_half_display(beta: float, z: SpectrumLike) -> float:
    """
    Unnormalized Gaussian perturbed density for l ~ chi_{beta n/2}:
    pair terms times exp(-sum |z_j|^2 / 2 - 2 sum_{j<k} Im z_j Im z_k).
    """
    pts = _points(z)
    if not config_gaussian(pts):
        return -np.inf
    y = pts.imag
    l = float(y.sum())
    return (
        _log_pair_terms(pts, beta)
        - 0.5 * float((np.abs(pts) ** 2).sum())
        - (l**2 - float((y**2).sum()))
    )


def log_density_laguerre_gamma_display(beta: float, a: float, z: SpectrumLike) -> float:
    """
    Unnormalized definite Laguerre perturbed density for F(l) proportional to
    l^{beta n/2 - 1} e^{-l/2}: pair terms times exp(-sum (Re z + Im z)/2) (Re prod z)^{beta a/2}.
    """
    pts = _points(z)
    if not config_laguerre_definite(pts):
        return -np.inf
    log_re_prod = _log_real_product(pts)
    if not np.isfinite(log_re_prod):
        return -np.inf
    return (
        _log_pair_terms(pts, beta)
        - 0.5 * float((pts.real + pts.imag).sum())
        + 0.5 * beta * a * log_re_prod
    )
