"""
Configuration Spaces - Predicates for the sets of perturbed spectra each model can produce
"""

from typing import Sequence, Union

import numpy as np

from perturbation.maps import PerturbedSpectrum

SpectrumLike = Union[PerturbedSpectrum, Sequence[complex], np.ndarray]

HALF_PI = 0.5 * np.pi


def _points(z: SpectrumLike) -> np.ndarray:
    if isinstance(z, PerturbedSpectrum):
        return z.z
    return np.atleast_1d(np.asarray(z, dtype=complex))


def _arg_sum(z: np.ndarray) -> float:
    # np.angle(0) == 0
    return float(np.angle(z).sum())


def _snap_zeros(z: np.ndarray, tol: float) -> np.ndarray:
    """Points within tol * max(1, max |z|) of the origin become exact zeros."""
    if z.size == 0:
        return z
    snapped = z.copy()
    snapped[np.abs(z) <= tol * max(1.0, float(np.abs(z).max()))] = 0.0
    return snapped


def config_gaussian(z: SpectrumLike) -> bool:
    """All eigenvalues in the open upper half-plane."""
    pts = _points(z)
    return bool(pts.size > 0 and np.all(pts.imag > 0))


def config_laguerre_definite(z: SpectrumLike) -> bool:
    """Open upper half-plane and sum of principal arguments below pi/2."""
    pts = _points(z)
    return config_gaussian(pts) and _arg_sum(pts) < HALF_PI


def config_laguerre_semidefinite(z: SpectrumLike, tol: float = 1e-8) -> bool:
    """
    Non-zero part of a rank-deficient Laguerre spectrum.

    Args:
        z: The m+1 non-zero eigenvalues
        tol: Allowed deviation of the argument sum from pi/2

    Returns:
        True iff every point is in the open upper half-plane and
        |sum Arg z_j - pi/2| <= tol
    """
    pts = _points(z)
    return config_gaussian(pts) and abs(_arg_sum(pts) - HALF_PI) <= tol


def config_psd_corollary(z: SpectrumLike, tol: float = 1e-8) -> bool:
    """
    Deterministic bound for J >= 0 and any l > 0: points in the closed upper
    half-plane with sum Arg z_j <= pi/2, zeros counted with Arg 0 = 0.
    """
    pts = _snap_zeros(_points(z), tol)
    if pts.size == 0 or np.any(pts.imag < -tol * max(1.0, float(np.abs(pts).max()))):
        return False
    return _arg_sum(pts) <= HALF_PI + tol


def config_negative_count(z: SpectrumLike, s: int, tol: float = 1e-8) -> bool:
    """
    Argument window for a Hermitian part with exactly s negative eigenvalues:
    pi/2 + pi (s - 1) < sum Arg z_j <= pi/2 + pi s.
    """
    if s < 0:
        return False
    pts = _snap_zeros(_points(z), tol)
    if not config_gaussian(pts[pts != 0]):
        return False
    total = _arg_sum(pts)
    return HALF_PI + np.pi * (s - 1) - tol < total <= HALF_PI + np.pi * s + tol
