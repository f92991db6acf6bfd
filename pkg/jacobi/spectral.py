"""
Spectral - Eigen-decomposition of Jacobi matrices and the Jacobi <-> spectral
measure bijection

The forward direction is an implicit QL sweep that rotates only the first
row of the eigenvector matrix, which is all the weights need. The inverse
direction runs Lanczos with full reorthogonalization on the discrete measure.
"""

import logging
from typing import Callable, Tuple

import numpy as np

from errors import ConvergenceError, DegenerateMeasureError, ReducibleMatrixError
from jacobi.types import JacobiMatrix, SpectralMeasure

logger = logging.getLogger(__name__)

MACHEP = np.finfo(float).eps
MAX_QL_SWEEPS = 60


def tridiagonal_eigen(diag: np.ndarray, offdiag: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues and first eigenvector components of a symmetric tridiagonal
    matrix by the implicit QL method.

    Args:
        diag: Diagonal entries
        offdiag: Off-diagonal entries

    Returns:
        (eigenvalues ascending, first components of the matching unit eigenvectors)
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[:n - 1] = offdiag
    z = np.zeros(n)
    z[0] = 1.0
    if n == 1:
        return d, z

    for lo in range(n):
        sweeps = 0
        while True:
            m = lo
            while m < n - 1 and abs(e[m]) > MACHEP * (abs(d[m]) + abs(d[m + 1])):
                m += 1
            if m == lo:
                break
            if sweeps == MAX_QL_SWEEPS:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {lo + 1}")
            sweeps += 1

            g = (d[lo + 1] - d[lo]) / (2.0 * e[lo])
            r = np.hypot(g, 1.0)
            g = d[m] - d[lo] + e[lo] / (g + np.copysign(r, g))
            s, c, p = 1.0, 1.0, 0.0
            for i in range(m - 1, lo - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) >= abs(g):
                    c = g / f
                    r = np.hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                else:
                    s = f / g
                    r = np.hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b

                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            d[lo] -= p
            e[lo] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    return d[order], z[order]


def spectral_measure(J: JacobiMatrix) -> SpectralMeasure:
    """
    Spectral measure of J with respect to e1.

    Args:
        J: Jacobi matrix with strictly positive off-diagonals

    Returns:
        Atoms (lambda_j, w_j) with w_j the squared first eigenvector components,
        sorted by lambda descending

    Raises:
        ReducibleMatrixError: if some off-diagonal is zero
    """
    zeros = np.flatnonzero(J.offdiag == 0.0)
    if zeros.size:
        raise ReducibleMatrixError(int(zeros[0]))
    eigenvalues, first = tridiagonal_eigen(J.diag, J.offdiag)
    weights = first**2
    weights = weights / weights.sum()
    return SpectralMeasure(eigenvalues, weights)


def lanczos(
    matvec: Callable[[np.ndarray], np.ndarray],
    start: np.ndarray,
    n: int,
    breakdown_tol: float,
    restart: bool = True,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Lanczos recurrence with full (twice-applied) reorthogonalization.

    On breakdown the recurrence either restarts from the lowest-index
    standard basis vector with a non-negligible component outside the
    current Krylov space, recording a zero coupling, or raises.

    Args:
        matvec: v -> A v for a Hermitian A
        start: Unit start vector
        n: Order of A
        breakdown_tol: Couplings at or below this are breakdowns
        restart: Restart on breakdown instead of raising

    Returns:
        (alphas, betas, V) with V's columns the Lanczos basis
    """
    dtype = np.result_type(start.dtype, matvec(start).dtype, float)
    V = np.zeros((n, n), dtype=dtype)
    alphas = np.zeros(n)
    betas = np.zeros(max(n - 1, 0))
    V[:, 0] = start

    for k in range(n):
        w = matvec(V[:, k])
        alphas[k] = float(np.real(np.vdot(V[:, k], w)))
        if k == n - 1:
            break
        w = w - alphas[k] * V[:, k]
        if k > 0:
            w = w - betas[k - 1] * V[:, k - 1]
        basis = V[:, :k + 1]
        for _ in range(2):
            w = w - basis @ (basis.conj().T @ w)
        beta = float(np.linalg.norm(w))

        if beta <= breakdown_tol:
            if not restart:
                raise DegenerateMeasureError(f"Lanczos breakdown at step {k + 1}")
            betas[k] = 0.0
            w = _restart_vector(basis, n, dtype)
            logger.debug(f"Lanczos breakdown at step {k + 1}; restarted")
        else:
            betas[k] = beta
            w = w / beta
        V[:, k + 1] = w

    return alphas, betas, V


def _restart_vector(basis: np.ndarray, n: int, dtype) -> np.ndarray:
    threshold = 0.5 / n
    for i in range(n):
        r = np.zeros(n, dtype=dtype)
        r[i] = 1.0
        for _ in range(2):
            r = r - basis @ (basis.conj().T @ r)
        norm2 = float(np.real(np.vdot(r, r)))
        if norm2 >= threshold:
            return r / np.sqrt(norm2)
    raise DegenerateMeasureError("no basis vector left outside the Krylov space")


def reconstruct_jacobi(mu: SpectralMeasure) -> JacobiMatrix:
    """
    The unique Jacobi matrix whose spectral measure is mu.

    Args:
        mu: Measure with distinct atoms and positive weights

    Returns:
        Jacobi matrix with strictly positive off-diagonals
    """
    lam = mu.lambdas
    start = np.sqrt(mu.weights)
    # distinct atoms with positive weights never break down in exact arithmetic
    alphas, betas, _ = lanczos(
        lambda v: lam * v, start, mu.n, breakdown_tol=np.finfo(float).tiny, restart=False
    )
    return JacobiMatrix(alphas, betas)
