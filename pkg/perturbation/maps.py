"""
Perturbation Maps - Complex spectra of J + i l E11 by two routes, and the
bijection between (spectral measure, l) and the perturbed spectrum

Route one roots the characteristic polynomial of the shifted Jacobi matrix.
Route two roots det(z - J_l) = prod(z - lambda_j) (1 - i l sum_j w_j / (z - lambda_j))
built from the spectral measure alone, then refines every root on the
secular equation around its nearest atom so small imaginary parts keep full
relative precision.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from errors import DegenerateMeasureError, InconsistentSpectrumError, ParameterError
from jacobi.spectral import spectral_measure, tridiagonal_eigen
from jacobi.tridiagonal import char_poly_coeffs
from jacobi.types import JacobiMatrix, SpectralMeasure
from perturbation.roots import ComplexPoly, poly_roots

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-8
WEIGHT_TOL = 1e-8
VANDERMONDE_WARN = 1e12
ZERO_EIGENVALUE_RTOL = 1e-8
BLOCK_ZERO_RTOL = 64 * np.finfo(float).eps


def canonical_order(z: Sequence[complex]) -> np.ndarray:
    """Lexicographic by (Re, Im), descending."""
    z = np.asarray(z, dtype=complex)
    return z[np.lexsort((-z.imag, -z.real))]


@dataclass
class PerturbedSpectrum:
    """
    Eigenvalues z_1..z_n of J + i l E11 in canonical order.

    Points outside the upper half-plane are representable; the
    configuration predicates and densities decide what to do with them.
    """

    z: np.ndarray

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.z, dtype=complex))
        if z.ndim != 1 or z.size == 0:
            raise ParameterError("a spectrum needs at least one eigenvalue")
        if not np.all(np.isfinite(z)):
            raise ParameterError("eigenvalues must be finite")
        self.z = canonical_order(z)

    @property
    def n(self) -> int:
        return self.z.size

    @property
    def radii(self) -> np.ndarray:
        return np.abs(self.z)

    @property
    def arguments(self) -> np.ndarray:
        """Principal arguments; Arg 0 is 0."""
        return np.angle(self.z)

    @property
    def imag_sum(self) -> float:
        return float(self.z.imag.sum())

    def to_list(self) -> List[List[float]]:
        return [[float(v.real), float(v.imag)] for v in self.z]

    @classmethod
    def from_list(cls, pairs: Sequence[Sequence[float]]) -> "PerturbedSpectrum":
        arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
        return cls(arr[:, 0] + 1j * arr[:, 1])


def eigenvalues_direct(J: JacobiMatrix, l: float) -> PerturbedSpectrum:
    """
    Eigenvalues of J + i l E11 as roots of its characteristic polynomial.

    Args:
        J: Jacobi matrix
        l: Coupling, l > 0

    Returns:
        Canonically ordered spectrum
    """
    if not l > 0:
        raise ParameterError(f"coupling l must be positive, got {l}")
    coeffs = char_poly_coeffs(J, 1j * l)
    return PerturbedSpectrum(poly_roots(ComplexPoly(coeffs)))


def _forward_coeffs(lam: np.ndarray, w: np.ndarray, l: float) -> np.ndarray:
    n = lam.size
    base = np.poly(lam)
    coupling = np.zeros(n, dtype=complex)
    for j in range(n):
        coupling += w[j] * np.poly(np.delete(lam, j))
    coeffs = base.astype(complex)
    coeffs[1:] -= 1j * l * coupling
    return coeffs[::-1]


def _secular_polish(lam: np.ndarray, w: np.ndarray, l: float, roots: np.ndarray) -> np.ndarray:
    """
    Newton on delta (c + S(delta)) = w_p, z = lambda_p + delta, c = -i/l,
    S(delta) = sum_{k != p} w_k / (lambda_k - lambda_p - delta).
    """
    c = -1j / l
    polished = roots.copy()
    for idx, z in enumerate(roots):
        p = int(np.argmin(np.abs(z - lam)))
        e = np.delete(lam, p) - lam[p]
        wk = np.delete(w, p)
        d = z - lam[p]

        def residual(delta):
            S = np.sum(wk / (e - delta))
            return delta * (c + S) - w[p], S

        g, S = residual(d)
        for _ in range(10):
            S1 = np.sum(wk / (e - d) ** 2)
            dg = c + S + d * S1
            if dg == 0:
                break
            candidate = d - g / dg
            g_new, S_new = residual(candidate)
            if not np.isfinite(g_new) or abs(g_new) >= abs(g):
                break
            d, g, S = candidate, g_new, S_new
        polished[idx] = lam[p] + d
    return polished


def forward_map(mu: SpectralMeasure, l: float) -> PerturbedSpectrum:
    """
    Perturbed spectrum from a spectral measure and coupling.

    z are the roots of prod_j (z - lambda_j) - i l sum_j w_j prod_{k != j} (z - lambda_k).

    Args:
        mu: Spectral measure of J
        l: Coupling, l > 0

    Returns:
        Canonically ordered spectrum, all points in the open upper half-plane
    """
    if not l > 0:
        raise ParameterError(f"coupling l must be positive, got {l}")
    lam, w = mu.lambdas, mu.weights
    roots = poly_roots(ComplexPoly(_forward_coeffs(lam, w, l)))
    if lam.size > 1:
        polished = _secular_polish(lam, w, l, roots)
        scale = max(1.0, float(np.abs(roots).max()))
        gaps = np.abs(polished[:, None] - polished[None, :]) + np.eye(lam.size) * scale
        if gaps.min() > 1e-14 * scale:
            roots = polished
        else:
            logger.warning("Secular polish merged two roots; keeping unpolished roots")
    else:
        roots = lam + 1j * l * w
    return PerturbedSpectrum(roots)


def _product_polish(z: np.ndarray, lam: float) -> Tuple[int, float, float]:
    """
    Refine a real root of Re prod_k (x - z_k) written as x = Re z_p + eps.

    Returns (p, eps, refined lambda).
    """
    p = int(np.argmin(np.abs(lam - z)))
    zp = z[p]
    others = np.delete(z, p)
    eps = lam - zp.real

    def f(e):
        x = zp.real + e
        Q = np.prod(x - others) if others.size else 1.0 + 0j
        return (e - 1j * zp.imag) * Q, Q, x

    val, Q, x = f(eps)
    for _ in range(10):
        inv = np.sum(1.0 / (x - others)) if others.size else 0.0
        deriv = np.real(Q + val * inv)
        if deriv == 0:
            break
        candidate = eps - np.real(val) / deriv
        val_new, Q_new, x_new = f(candidate)
        if not abs(np.real(val_new)) < abs(np.real(val)):
            break
        eps, val, Q, x = candidate, val_new, Q_new, x_new
    return p, eps, zp.real + eps


def inverse_map(spectrum: PerturbedSpectrum) -> Tuple[SpectralMeasure, float]:
    """
    Recover (mu, l) from a perturbed spectrum.

    lambda are the roots of (prod (z - z_j) + prod (z - conj z_j)) / 2,
    l = sum Im z_j, and w_j = (i/l) prod_k (lambda_j - z_k) / prod_{k != j} (lambda_j - lambda_k).

    Args:
        spectrum: Points in the open upper half-plane

    Returns:
        (spectral measure, l)

    Raises:
        InconsistentSpectrumError: the input is not in the image of forward_map
    """
    z = spectrum.z
    n = z.size
    if np.any(z.imag <= 0):
        raise InconsistentSpectrumError("all eigenvalues must lie in the open upper half-plane")
    l = float(z.imag.sum())
    scale = max(1.0, float(np.abs(z).max()))

    real_coeffs = np.real(np.poly(z))[::-1]
    lam_c = poly_roots(ComplexPoly(real_coeffs.astype(complex)))
    if np.abs(lam_c.imag).max() > IMAG_TOL * scale:
        raise InconsistentSpectrumError(
            f"real-part polynomial has non-real roots (|Im| up to {np.abs(lam_c.imag).max():.3e})"
        )
    lam = np.sort(lam_c.real)[::-1]

    weights = np.empty(n, dtype=complex)
    refined = np.empty(n)
    for j in range(n):
        p, eps, lam_j = _product_polish(z, lam[j])
        refined[j] = lam_j
        others = np.delete(z, p)
        weights[j] = (eps - 1j * z[p].imag) * (np.prod(lam_j - others) if others.size else 1.0)

    for j in range(n):
        denom = np.prod(refined[j] - np.delete(refined, j)) if n > 1 else 1.0
        weights[j] = 1j / l * weights[j] / denom

    if n > 1:
        vander = min(abs(np.prod(refined[j] - np.delete(refined, j))) for j in range(n))
        ratio = scale ** (n - 1) / max(vander, np.finfo(float).tiny)
        if ratio > VANDERMONDE_WARN:
            logger.warning(f"inverse_map is ill-conditioned: Vandermonde ratio {ratio:.3e}")

    if np.abs(weights.imag).max() > WEIGHT_TOL:
        raise InconsistentSpectrumError(f"weights are not real (|Im| up to {np.abs(weights.imag).max():.3e})")
    w = weights.real
    if np.any(w <= 0):
        raise InconsistentSpectrumError(f"weights must be positive, got min {w.min():.3e}")
    if abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise InconsistentSpectrumError(f"weights sum to {w.sum():.12f}")
    try:
        mu = SpectralMeasure(refined, w / w.sum())
    except DegenerateMeasureError as e:
        raise InconsistentSpectrumError(str(e)) from e
    return mu, l


def perturbed_eigenvalues(J: JacobiMatrix, l: float) -> Tuple[PerturbedSpectrum, SpectralMeasure]:
    """
    All eigenvalues of J + i l E11 through the spectral measure route.

    Only the block containing e1 feels the perturbation; the eigenvalues of
    the remaining blocks are real and unchanged.

    Returns:
        (full spectrum, spectral measure of the leading block)
    """
    blocks = J.blocks()
    mu = spectral_measure(blocks[0])
    parts = [forward_map(mu, l).z]
    floor = BLOCK_ZERO_RTOL * max(1.0, J.norm())
    for block in blocks[1:]:
        eigenvalues, _ = tridiagonal_eigen(block.diag, block.offdiag)
        # singular decoupled blocks come back as +-1e-16; their zeros are exact
        eigenvalues[np.abs(eigenvalues) <= floor] = 0.0
        parts.append(eigenvalues.astype(complex))
    return PerturbedSpectrum(np.concatenate(parts)), mu


def match_spectra(a: Sequence[complex], b: Sequence[complex]) -> Tuple[float, np.ndarray]:
    """
    Optimal pairing of two spectra of equal size.

    Returns:
        (max |a_i - b_perm[i]|, perm)
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ParameterError(f"spectra differ in size: {a.size} vs {b.size}")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(a.size, dtype=int)
    perm[rows] = cols
    return float(cost[rows, cols].max()), perm


def split_zero_eigenvalues(
    spectrum: PerturbedSpectrum, scale: float, expected: Optional[int] = None
) -> Tuple[PerturbedSpectrum, int]:
    """
    Remove eigenvalues with |z| < 1e-8 * max(1, scale).

    Args:
        spectrum: Full spectrum
        scale: Matrix norm setting the threshold
        expected: If given, the number of zeros that must be found

    Returns:
        (non-zero part, number removed)
    """
    threshold = ZERO_EIGENVALUE_RTOL * max(1.0, scale)
    small = np.abs(spectrum.z) < threshold
    count = int(small.sum())
    if expected is not None and count != expected:
        raise InconsistentSpectrumError(f"expected {expected} zero eigenvalues, found {count}")
    if count == spectrum.n:
        raise InconsistentSpectrumError("spectrum has no non-zero eigenvalues")
    return PerturbedSpectrum(spectrum.z[~small]), count
