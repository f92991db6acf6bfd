"""
Identities - Per-sample residuals of the algebraic identities linking
(lambda, w, l) to the perturbed spectrum and to the bidiagonal Laguerre factor
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from errors import ParameterError
from jacobi.types import Bidiagonal, SpectralMeasure
from perturbation.maps import PerturbedSpectrum

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8


@dataclass
class IdentityReport:
    """Relative (or log-domain absolute) residual per identity."""

    residuals: Dict[str, float] = field(default_factory=dict)
    tol: float = DEFAULT_TOL

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return all(np.isfinite(v) and v <= self.tol for v in self.residuals.values())

    def to_dict(self) -> Dict[str, Any]:
        return {**self.residuals, "pass": self.passed}


def _log_pairs(points: np.ndarray) -> float:
    if points.size < 2:
        return 0.0
    iu = np.triu_indices(points.size, k=1)
    with np.errstate(divide="ignore"):
        return float(np.log(np.abs(points[:, None] - points[None, :])[iu]).sum())


def identity_suite(
    mu: SpectralMeasure, l: float, z: PerturbedSpectrum, tol: float = DEFAULT_TOL
) -> IdentityReport:
    """
    Residuals of the coefficient identities for z = forward_map(mu, l).

    el:            l = sum Im z_j
    sum:           sum lambda_j = sum Re z_j
    lambdaSquared: sum lambda_j^2 = sum (Re z_j)^2 + 2 sum_{j<k} Im z_j Im z_k
    prodW:         prod w_j = (2l)^-n prod_{j,k} |conj(z_j) - z_k| / prod_{j<k} |lambda_j - lambda_k|^2
    w0:            (atom at zero only) w_0 = prod |z_j| / (l prod_{lambda_j != 0} |lambda_j|)

    Args:
        mu: Spectral measure
        l: Coupling
        z: Perturbed spectrum with as many points as mu has atoms
        tol: Pass threshold

    Returns:
        IdentityReport; prodW is an absolute residual of logs, the rest are relative
    """
    pts = z.z
    lam, w = mu.lambdas, mu.weights
    n = mu.n
    if pts.size != n:
        raise ParameterError(f"measure has {n} atoms but spectrum has {pts.size} points")
    x, y = pts.real, pts.imag
    report = IdentityReport(tol=tol)

    report.residuals["el"] = abs(l - y.sum()) / max(1.0, l)
    report.residuals["sum"] = abs(lam.sum() - x.sum()) / max(1.0, float(np.abs(lam).sum()))

    cross = (y.sum() ** 2 - (y**2).sum()) if n > 1 else 0.0
    rhs = (x**2).sum() + cross
    report.residuals["lambdaSquared"] = abs((lam**2).sum() - rhs) / max(1.0, float((lam**2).sum()))

    all_pairs = np.abs(pts.conj()[:, None] - pts[None, :])
    log_rhs = -n * np.log(2.0 * l) + float(np.log(all_pairs).sum()) - 2.0 * _log_pairs(lam.astype(complex))
    report.residuals["prodW"] = abs(float(np.log(w).sum()) - log_rhs)

    index = mu.zero_atom()
    if index is not None:
        nonzero = np.delete(lam, index)
        predicted = np.exp(float(np.log(np.abs(pts)).sum()) - np.log(l) - float(np.log(np.abs(nonzero)).sum()))
        report.residuals["w0"] = abs(w[index] - predicted) / w[index]

    logger.debug(f"identity residuals: {report.residuals}")
    return report


def laguerre_product_identities(
    B: Bidiagonal, mu: SpectralMeasure, z: Optional[PerturbedSpectrum] = None, l: Optional[float] = None,
    tol: float = DEFAULT_TOL,
) -> IdentityReport:
    """
    Product identities of the rank-deficient bidiagonal factor.

    (i)  prod_j x_j^(m-j+1) y_j^(m-j+1) = prod_{j=0..m} w_j^(1/2) prod_{j<k<=m} |lambda_j - lambda_k| prod lambda_j
    (ii) prod_j y_j^2 = w_0 prod_j lambda_j

    Both compared in the log domain; the residual is |log lhs - log rhs|,
    which equals the relative residual to first order.

    Args:
        B: Bidiagonal factor from the m < n Laguerre model
        mu: Spectral measure of its (m+1) x (m+1) leading block, atom at zero included
        z: Optional non-zero perturbed eigenvalues; with l, adds the w0 identity
        l: Coupling used to produce z
        tol: Pass threshold
    """
    m = int(np.count_nonzero(B.main))
    if m >= B.n:
        raise ParameterError("product identities apply to the rank-deficient model m < n")
    if mu.n != m + 1:
        raise ParameterError(f"expected a measure with {m + 1} atoms, got {mu.n}")
    index = mu.zero_atom()
    if index is None:
        raise ParameterError("measure has no atom at zero")

    x = B.main[:m]
    y = B.upper[:m]
    lam = np.delete(mu.lambdas, index)
    w0 = mu.weights[index]
    powers = np.arange(m, 0, -1)

    report = IdentityReport(tol=tol)
    log_lhs = float((powers * (np.log(x) + np.log(y))).sum())
    log_rhs = 0.5 * float(np.log(mu.weights).sum()) + _log_pairs(lam.astype(complex)) + float(np.log(lam).sum())
    report.residuals["product_i"] = abs(log_lhs - log_rhs)
    report.residuals["product_ii"] = abs(2.0 * float(np.log(y).sum()) - (np.log(w0) + float(np.log(lam).sum())))

    if z is not None:
        if l is None:
            raise ParameterError("the w0 identity needs the coupling l")
        predicted = np.exp(float(np.log(z.radii).sum()) - np.log(l) - float(np.log(lam).sum()))
        report.residuals["w0"] = abs(w0 - predicted) / w0
    return report
