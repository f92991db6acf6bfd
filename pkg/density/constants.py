"""
Normalization Constants - Log-domain normalization constants of the spectral
and perturbed-eigenvalue densities
"""

from typing import Dict

import numpy as np
from scipy.special import gammaln

from ensembles.models import EnsembleSpec

LOG2 = np.log(2.0)


def log_g(beta: float, n: int) -> float:
    """log g = (n/2) log 2pi + sum_j [lgamma(1 + beta j/2) - lgamma(1 + beta/2)]."""
    j = np.arange(1, n + 1)
    return 0.5 * n * np.log(2.0 * np.pi) + float((gammaln(1.0 + 0.5 * beta * j) - gammaln(1.0 + 0.5 * beta)).sum())


def log_c(beta: float, n: int) -> float:
    """log c = n lgamma(beta/2) - lgamma(beta n/2)."""
    return float(n * gammaln(0.5 * beta) - gammaln(0.5 * beta * n))


def log_l(beta: float, n: int, a: float) -> float:
    """Laguerre eigenvalue constant; 0 for the empty product n = 0."""
    if n == 0:
        return 0.0
    j = np.arange(1, n + 1)
    power = n * (0.5 * a * beta + 1.0 + 0.5 * (n - 1) * beta) * LOG2
    terms = (
        gammaln(1.0 + 0.5 * beta * j)
        + gammaln(1.0 + 0.5 * beta * a + 0.5 * beta * (j - 1))
        - gammaln(1.0 + 0.5 * beta)
    )
    return float(power + terms.sum())


def log_d(beta: float, m: int, n: int) -> float:
    """Weight constant of the rank-deficient case: Gamma(beta(n-m)/2) Gamma(beta/2)^m / Gamma(beta n/2)."""
    return float(gammaln(0.5 * beta * (n - m)) + m * gammaln(0.5 * beta) - gammaln(0.5 * beta * n))


def log_norm_constants(spec: EnsembleSpec) -> Dict[str, float]:
    """
    Every normalization constant that applies to ``spec``, as natural logs.

    Gaussian: g, c, h. Laguerre m >= n: l, c, q. Laguerre m < n: l (at size m),
    d, t.

    Args:
        spec: Ensemble

    Returns:
        Map from constant name to its log
    """
    beta, n = spec.beta, spec.n
    if spec.kind == "gaussian":
        g, c = log_g(beta, n), log_c(beta, n)
        return {"g": g, "c": c, "h": n * (0.5 * beta - 1.0) * LOG2 + g + c}

    a = spec.a
    if not spec.is_semidefinite:
        lc, c = log_l(beta, n, a), log_c(beta, n)
        return {"l": lc, "c": c, "q": n * (0.5 * beta - 1.0) * LOG2 + lc + c}

    m = spec.m
    lc, d = log_l(beta, m, a), log_d(beta, m, n)
    t = np.log(m + 1.0) + (m + 1) * (0.5 * beta - 1.0) * LOG2 + lc + d
    return {"l": lc, "d": d, "t": float(t)}
