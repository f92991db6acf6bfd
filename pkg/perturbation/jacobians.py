"""
Jacobians - Analytic and finite-difference Jacobians of the map (lambda, w, l) -> z

Gaussian chart: inputs (lambda_1..lambda_n, w_1..w_{n-1}, l) with w_n dependent,
outputs (Re z, Im z).

Rank-deficient Laguerre chart: inputs (lambda_1..lambda_m, w_1..w_m, l) with
the atom at zero carrying w_0 = 1 - sum w_j, outputs (r_1..r_{m+1},
theta_1..theta_m) in canonical order; the last argument is fixed by
sum theta = pi/2.
"""

import logging
from typing import Callable, Tuple

import numpy as np

from errors import ParameterError, SingularJacobianError
from jacobi.types import SpectralMeasure
from perturbation.maps import PerturbedSpectrum, forward_map, match_spectra
from perturbation.roots import root_multiplicities

logger = logging.getLogger(__name__)

FD_STEP = np.finfo(float).eps ** (1.0 / 3.0)
COINCIDENCE_RTOL = 1e-15


def _log_pair_distance_sum(points: np.ndarray) -> float:
    """sum_{j<k} log |p_j - p_k|."""
    if points.size < 2:
        return 0.0
    diff = np.abs(points[:, None] - points[None, :])
    iu = np.triu_indices(points.size, k=1)
    with np.errstate(divide="ignore"):
        return float(np.log(diff[iu]).sum())


def _check_distinct(z: np.ndarray) -> None:
    repeated = [(centre, k) for centre, k in root_multiplicities(z, COINCIDENCE_RTOL) if k > 1]
    if repeated:
        centre, k = repeated[0]
        raise SingularJacobianError(f"perturbed eigenvalue {centre:.6g} has multiplicity {k}")


def _as_points(z) -> np.ndarray:
    return z.z if isinstance(z, PerturbedSpectrum) else np.atleast_1d(np.asarray(z, dtype=complex))


def log_jacobian_gaussian(mu: SpectralMeasure, l: float, z) -> float:
    """log of l^(n-1) prod_{j<k} |lambda_j - lambda_k|^2 / |z_j - z_k|^2."""
    pts = _as_points(z)
    if pts.size != mu.n:
        raise ParameterError(f"measure has {mu.n} atoms but spectrum has {pts.size} points")
    if not l > 0:
        raise ParameterError(f"coupling l must be positive, got {l}")
    _check_distinct(pts)
    return (
        (mu.n - 1) * np.log(l)
        + 2.0 * _log_pair_distance_sum(mu.lambdas.astype(complex))
        - 2.0 * _log_pair_distance_sum(pts)
    )


def jacobian_gaussian(mu: SpectralMeasure, l: float, z) -> float:
    """
    |det d(Re z, Im z) / d(lambda, w, l)| for the full-rank chart.

    Args:
        mu: Spectral measure with n atoms
        l: Coupling
        z: forward_map(mu, l)

    Returns:
        Jacobian determinant magnitude

    Raises:
        SingularJacobianError: two z's coincide
    """
    return float(np.exp(log_jacobian_gaussian(mu, l, z)))


def _nonzero_atoms(mu: SpectralMeasure) -> Tuple[np.ndarray, np.ndarray, float]:
    index = mu.zero_atom()
    if index is None:
        raise ParameterError("rank-deficient chart needs a measure with an atom at zero")
    keep = np.arange(mu.n) != index
    return mu.lambdas[keep], mu.weights[keep], float(mu.weights[index])


def log_jacobian_laguerre_semidefinite(mu: SpectralMeasure, l: float, z) -> float:
    """log of l^m prod |lambda_j| prod_{j<k<=m} |dlambda|^2 / prod_{j<k<=m+1} |dz|^2."""
    pts = _as_points(z)
    lam, _, _ = _nonzero_atoms(mu)
    m = lam.size
    if pts.size != m + 1:
        raise ParameterError(f"expected {m + 1} non-zero eigenvalues, got {pts.size}")
    if not l > 0:
        raise ParameterError(f"coupling l must be positive, got {l}")
    _check_distinct(pts)
    return (
        m * np.log(l)
        + float(np.log(np.abs(lam)).sum())
        + 2.0 * _log_pair_distance_sum(lam.astype(complex))
        - 2.0 * _log_pair_distance_sum(pts)
    )


def jacobian_laguerre_semidefinite(mu: SpectralMeasure, l: float, z) -> float:
    """
    |det d(r_1..r_{m+1}, theta_1..theta_m) / d(lambda_1..lambda_m, w_1..w_m, l)|.

    Args:
        mu: Measure with m non-zero atoms and one atom at zero
        l: Coupling
        z: The m+1 non-zero perturbed eigenvalues
    """
    return float(np.exp(log_jacobian_laguerre_semidefinite(mu, l, z)))


def _central_jacobian(
    f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, steps: np.ndarray
) -> np.ndarray:
    """Central differences with one Richardson extrapolation step."""
    columns = []
    for i in range(x.size):
        e = np.zeros_like(x)

        def diff(h):
            e[i] = h
            return (f(x + e) - f(x - e)) / (2.0 * h)

        coarse = diff(steps[i])
        fine = diff(0.5 * steps[i])
        columns.append((4.0 * fine - coarse) / 3.0)
    return np.column_stack(columns)


def _matched(base: np.ndarray, moved: np.ndarray) -> np.ndarray:
    _, perm = match_spectra(base, moved)
    return moved[perm]


def fd_jacobian_gaussian(mu: SpectralMeasure, l: float) -> float:
    """Finite-difference |det| of (lambda, w_1..w_{n-1}, l) -> (Re z, Im z)."""
    n = mu.n
    base = forward_map(mu, l).z

    def f(x):
        lam = x[:n]
        w = np.append(x[n:2 * n - 1], 1.0 - x[n:2 * n - 1].sum())
        z = _matched(base, forward_map(SpectralMeasure(lam, w, sum_tol=1e-9), x[-1]).z)
        return np.concatenate([z.real, z.imag])

    x = np.concatenate([mu.lambdas, mu.weights[:-1], [l]])
    w_dep = mu.weights[-1]
    steps = np.concatenate([
        FD_STEP * np.maximum(np.abs(mu.lambdas), 1.0),
        FD_STEP * np.minimum(mu.weights[:-1], w_dep),
        [FD_STEP * l],
    ])
    matrix = _central_jacobian(f, x, steps)
    return float(abs(np.linalg.det(matrix)))


def fd_jacobian_laguerre_semidefinite(mu: SpectralMeasure, l: float) -> float:
    """Finite-difference |det| of (lambda_j, w_j, l) -> (r_1..r_{m+1}, theta_1..theta_m)."""
    lam0, w0_nonzero, w_zero = _nonzero_atoms(mu)
    m = lam0.size
    base = forward_map(SpectralMeasure(np.append(lam0, 0.0), np.append(w0_nonzero, w_zero)), l).z

    def f(x):
        lam = np.append(x[:m], 0.0)
        w = np.append(x[m:2 * m], 1.0 - x[m:2 * m].sum())
        z = _matched(base, forward_map(SpectralMeasure(lam, w, sum_tol=1e-9), x[-1]).z)
        return np.concatenate([np.abs(z), np.angle(z)[:m]])

    x = np.concatenate([lam0, w0_nonzero, [l]])
    steps = np.concatenate([
        FD_STEP * np.maximum(np.abs(lam0), 1.0),
        FD_STEP * np.minimum(w0_nonzero, w_zero),
        [FD_STEP * l],
    ])
    matrix = _central_jacobian(f, x, steps)
    return float(abs(np.linalg.det(matrix)))
