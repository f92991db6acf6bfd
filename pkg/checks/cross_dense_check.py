"""
Cross Dense Check - Dense GOE/GUE/LOE/LUE matrices against the tridiagonal
models: coefficient laws by KS, and perturbed characteristic polynomials by
LU determinants at probe points
"""

import logging
from typing import List, Optional

import numpy as np
from scipy.linalg import lu_factor

from checks.reports import KS_ALPHA, TestReport, bonferroni, ks_two_sample, probe_points
from ensembles.models import CouplingLaw, EnsembleSpec
from ensembles.samplers import sample_coupling_row, sample_dense, sample_jacobi
from errors import UnsupportedEnsembleError
from jacobi.tridiagonal import char_poly_coeffs, tridiagonalize
from jacobi.types import DenseHermitian
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

PROBE_RTOL = 1e-8


def _unitary_to_e1(u: np.ndarray) -> np.ndarray:
    """Unitary V with V u = e1 for a unit vector u."""
    n = u.size
    pivot = int(np.argmax(np.abs(u)))
    others = [k for k in range(n) if k != pivot]
    A = np.zeros((n, n), dtype=u.dtype)
    A[:, 0] = u
    for col, k in enumerate(others, start=1):
        A[k, col] = 1.0
    Q, _ = np.linalg.qr(A)
    Q[:, 0] = u
    return Q.conj().T


def _lu_det(matrix: np.ndarray) -> complex:
    lu, piv = lu_factor(matrix)
    swaps = int(np.sum(piv != np.arange(piv.size)))
    return complex(np.prod(np.diag(lu)) * (-1) ** swaps)


def probe_residual(H: DenseHermitian, L: np.ndarray) -> float:
    """
    Max relative gap between det(zeta - H - i L* L) and the characteristic
    polynomial of the tridiagonal J + i l E11 over 2n+1 probe points.
    """
    n = H.n
    l = float(np.sum(np.abs(L) ** 2))
    V = _unitary_to_e1(L.conj() / np.sqrt(l))
    rotated = V @ H.matrix @ V.conj().T
    rotated = 0.5 * (rotated + rotated.conj().T)
    J, _ = tridiagonalize(DenseHermitian(rotated, H.beta))
    coeffs = char_poly_coeffs(J, 1j * l)

    effective = H.matrix + 1j * np.outer(L.conj(), L)
    radius = 1.5 * (np.linalg.norm(H.matrix, 2) + l) + 1.0
    worst = 0.0
    for point in probe_points(2 * n + 1, radius):
        zeta = point.value
        dense = _lu_det(zeta * np.eye(n) - effective)
        tri = np.polyval(coeffs[::-1], zeta)
        worst = max(worst, abs(dense - tri) / max(abs(dense), abs(tri)))
    return worst


def _coefficients(J) -> np.ndarray:
    return np.concatenate([J.diag, J.offdiag])


def cross_validate_dense(
    spec: EnsembleSpec,
    law: CouplingLaw,
    samples: int,
    seed: int,
    probe_draws: Optional[int] = None,
) -> List[TestReport]:
    """
    Dense versus tridiagonal models for beta in {1, 2}.

    Args:
        spec: Ensemble with beta 1 or 2
        law: Coupling law; sigma scales the dense coupling row
        samples: Draws for the coefficient KS tests
        seed: Root seed
        probe_draws: Draws for the determinant probes (default min(samples, 200))

    Returns:
        [coefficient report, probe report]

    Raises:
        UnsupportedEnsembleError: beta outside {1, 2}
    """
    if spec.beta not in (1, 2):
        raise UnsupportedEnsembleError(
            f"dense cross-validation needs beta in {{1, 2}}, got beta={spec.beta:g}"
        )
    beta = int(spec.beta)
    root = RngStream(seed, (3,))
    probe_draws = min(samples, 200) if probe_draws is None else probe_draws

    dense_coeffs, model_coeffs = [], []
    probe_worst = 0.0
    trailing_ok = True
    for i in range(samples):
        stream = root.substream(i)
        H = sample_dense(stream.substream(0), spec.kind, beta, spec.n, spec.m)
        J_dense, _ = tridiagonalize(H)
        J_model, _ = sample_jacobi(stream.substream(1), spec)
        dense_coeffs.append(_coefficients(J_dense))
        model_coeffs.append(_coefficients(J_model))
        if i < probe_draws and spec.is_semidefinite:
            J_lanczos, _ = tridiagonalize(H, method="lanczos")
            m = spec.m
            trailing_ok = trailing_ok and bool(
                np.all(J_lanczos.offdiag[m:] == 0.0) and np.all(J_lanczos.diag[m + 1:] == 0.0)
            )
        if i < probe_draws:
            L = sample_coupling_row(stream.substream(2), beta, spec.n, law.sigma)
            probe_worst = max(probe_worst, probe_residual(H, L))

    dense_coeffs = np.asarray(dense_coeffs)
    model_coeffs = np.asarray(model_coeffs)
    n = spec.n
    names = [f"b_{j + 1}" for j in range(n)] + [f"a_{j + 1}" for j in range(n - 1)]
    per_coeff = [
        ks_two_sample(dense_coeffs[:, k], model_coeffs[:, k], name=names[k], seed=seed)
        for k in range(len(names))
    ]
    coeff_report = bonferroni(f"cross_dense.coefficients[{spec.label}]", per_coeff, seed, KS_ALPHA)
    if spec.is_semidefinite:
        coeff_report.details["trailing_zeros_exact"] = trailing_ok
        coeff_report.passed = coeff_report.passed and trailing_ok

    probe_report = TestReport(
        name=f"cross_dense.probes[{spec.label}]",
        samples=probe_draws,
        statistic=probe_worst,
        max_residual=probe_worst,
        threshold=PROBE_RTOL,
        passed=bool(probe_worst <= PROBE_RTOL),
        seed=seed,
    )
    logger.info(
        f"Dense cross-validation {spec.label}: min p={coeff_report.p_value:.3e}, probe residual={probe_worst:.3e}"
    )
    return [coeff_report, probe_report]


CHECK_INFO = {
    "name": "cross-dense",
    "description": "Dense beta in {1, 2} ensembles against the tridiagonal models",
    "functions": {
        "cross_validate_dense": {
            "description": "Coefficient KS tests and characteristic polynomial probes",
            "parameters": ["spec", "law", "samples", "seed", "probe_draws"],
            "handler": cross_validate_dense,
        }
    },
}
