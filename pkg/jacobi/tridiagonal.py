"""
Tridiagonal - Reduction of dense Hermitian matrices to Jacobi form with e1
fixed, squaring of bidiagonal factors, and characteristic polynomials of
shifted Jacobi matrices
"""

import logging
from typing import Literal, Tuple

import numpy as np

from jacobi.spectral import lanczos
from jacobi.types import Bidiagonal, DenseHermitian, JacobiMatrix

logger = logging.getLogger(__name__)

SNAP_RTOL = 1e-12


def bidiag_square(B: Bidiagonal) -> JacobiMatrix:
    """
    J = B^T B for upper bidiagonal B.

    b_j = x_j^2 + y_{j-1}^2 and a_j = x_j y_j; exact zeros in B stay exact.
    """
    x, y = B.main, B.upper
    diag = x**2
    diag[1:] += y**2
    return JacobiMatrix(diag, x[:-1] * y)


def _householder(matrix: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Reflect columns below the subdiagonal away; returns (T, Q) with Q H Q* = T."""
    A = np.array(matrix, dtype=complex)
    n = A.shape[0]
    Q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = A[k + 1:, k].copy()
        norm_x = np.linalg.norm(x)
        if norm_x <= tol:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * norm_x
        v /= np.linalg.norm(v)
        A[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ A[k + 1:, :])
        A[:, k + 1:] -= 2.0 * np.outer(A[:, k + 1:] @ v, v.conj())
        Q[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ Q[k + 1:, :])
    return A, Q


def _phase_fix(T: np.ndarray, Q: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Diagonal unitary D with D T D* real and non-negative off the diagonal; D e1 = e1."""
    n = T.shape[0]
    sub = np.array([T[k + 1, k] for k in range(n - 1)], dtype=complex)
    d = np.ones(n, dtype=complex)
    for k, t in enumerate(sub):
        d[k + 1] = d[k] * (np.conj(t) / abs(t)) if abs(t) > 0 else d[k]
    return np.real(np.diag(T)), np.abs(sub), d[:, None] * Q


def _snap(values: np.ndarray, tol: float) -> np.ndarray:
    out = values.copy()
    out[np.abs(out) <= tol] = 0.0
    return out


def tridiagonalize(
    H: DenseHermitian,
    method: Literal["householder", "lanczos"] = "householder",
    snap_rtol: float = SNAP_RTOL,
) -> Tuple[JacobiMatrix, np.ndarray]:
    """
    Unitarily reduce H to a Jacobi matrix J = S H S* with S e1 = S* e1 = e1.

    When e1 is not cyclic the result is block split: couplings and diagonal
    entries at or below snap_rtol * max(1, ||H||_F) are set to exact zeros.

    Args:
        H: Dense Hermitian matrix
        method: "householder" reflections or Gram-Schmidt "lanczos"
        snap_rtol: Relative threshold for exact zeros

    Returns:
        (J, S) where S is the unitary transcript
    """
    M = H.matrix
    n = H.n
    tol = snap_rtol * max(1.0, float(np.linalg.norm(M)))

    if method == "householder":
        T, Q = _householder(M, tol)
        diag, off, S = _phase_fix(T, Q)
    elif method == "lanczos":
        start = np.zeros(n, dtype=M.dtype)
        start[0] = 1.0
        diag, off, V = lanczos(lambda v: M @ v, start, n, breakdown_tol=tol, restart=True)
        S = V.conj().T
    else:
        raise ValueError(f"unknown tridiagonalization method '{method}'")

    if H.beta == 1:
        S = np.real(S)
    J = JacobiMatrix(_snap(diag, tol), _snap(off, tol))
    split = int(np.sum(J.offdiag == 0.0))
    if split:
        logger.debug(f"{method} tridiagonalization split into {split + 1} blocks")
    return J, S


def char_poly_coeffs(J: JacobiMatrix, shift: complex = 0.0) -> np.ndarray:
    """
    Coefficients of det(z - J - shift E11), lowest degree first.

    Three-term recurrence p_k = (z - b_k) p_{k-1} - a_{k-1}^2 p_{k-2}, with
    the shift entering b_1.

    Args:
        J: Jacobi matrix
        shift: Complex shift added to entry (1, 1), typically i*l

    Returns:
        Monic coefficient array kappa_0..kappa_n
    """
    n = J.n
    b = J.diag.astype(complex)
    b[0] += shift
    a2 = J.offdiag**2
    prev = np.array([1.0 + 0j])
    curr = np.array([-b[0], 1.0 + 0j])
    for k in range(1, n):
        nxt = np.zeros(k + 2, dtype=complex)
        nxt[1:] += curr
        nxt[:-1] -= b[k] * curr
        nxt[:-2] -= a2[k - 1] * prev
        prev, curr = curr, nxt
    return curr
