"""
Jacobian Check - Analytic Jacobians against central finite differences at
interior model draws
"""

import logging
from typing import Literal, Optional, Tuple

import numpy as np

from checks.reports import TestReport, residual_report
from ensembles.models import CouplingLaw
from ensembles.samplers import sample_coupling, sample_gbeta, sample_lbeta
from harness.parallel import first_accepted, map_substreams
from jacobi.spectral import spectral_measure
from jacobi.types import SpectralMeasure
from perturbation.jacobians import (
    fd_jacobian_gaussian,
    fd_jacobian_laguerre_semidefinite,
    jacobian_gaussian,
    jacobian_laguerre_semidefinite,
)
from perturbation.maps import forward_map
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

JACOBIAN_RTOL = 1e-5
# interior: finite differences need room in every coordinate
MIN_WEIGHT = 1e-3
MIN_GAP = 1e-2


def _is_interior(mu: SpectralMeasure) -> bool:
    if mu.weights.min() < MIN_WEIGHT:
        return False
    return mu.n < 2 or float(np.min(mu.lambdas[:-1] - mu.lambdas[1:])) >= MIN_GAP


def _interior_gaussian(beta: float, n: int, law: CouplingLaw):
    def draw(rng: RngStream) -> Optional[Tuple[SpectralMeasure, float]]:
        mu = spectral_measure(sample_gbeta(rng, beta, n))
        if not _is_interior(mu):
            return None
        return mu, sample_coupling(rng, law, beta, n)

    return draw


def _interior_semidefinite(beta: float, m: int, n: int, law: CouplingLaw):
    def draw(rng: RngStream) -> Optional[Tuple[SpectralMeasure, float]]:
        _, J = sample_lbeta(rng, beta, m, n)
        mu = spectral_measure(J.leading_block()).snap_zero_atom()
        if not _is_interior(mu):
            return None
        return mu, sample_coupling(rng, law, beta, n)

    return draw


def jacobian_check(
    case: Literal["gaussian", "laguerre_semidef"],
    trials: int,
    seed: int,
    beta: float = 2.0,
    n: int = 3,
    m: Optional[int] = None,
    law: Optional[CouplingLaw] = None,
    threads: int = 1,
) -> TestReport:
    """
    Max relative deviation |fd / analytic - 1| over ``trials`` interior draws.

    Interior draws have every weight >= 1e-3 and atoms (the zero atom
    included) at least 1e-2 apart; others are redrawn.

    Args:
        case: "gaussian" (full-rank chart) or "laguerre_semidef" (polar chart)
        trials: Number of points
        seed: Root seed
        beta: Dyson index
        n: Matrix order
        m: Laguerre m < n for the rank-deficient case (default n - 2, at least 1)
        law: Coupling law (default GammaType(1))
        threads: Worker cap
    """
    law = law or CouplingLaw()
    if case == "gaussian":
        draw = _interior_gaussian(beta, n, law)
        analytic, numeric = jacobian_gaussian, fd_jacobian_gaussian
    elif case == "laguerre_semidef":
        m = max(1, n - 2) if m is None else m
        draw = _interior_semidefinite(beta, m, n, law)
        analytic, numeric = jacobian_laguerre_semidefinite, fd_jacobian_laguerre_semidefinite
    else:
        raise ValueError(f"unknown jacobian case '{case}'")

    def one(rng: RngStream) -> float:
        mu, l = first_accepted(draw, rng)
        exact = analytic(mu, l, forward_map(mu, l))
        return abs(numeric(mu, l) / exact - 1.0)

    deviations = map_substreams(one, seed, trials, threads, key=4)
    report = residual_report(
        f"jacobian.{case}[beta={beta:g}, n={n}" + (f", m={m}]" if case == "laguerre_semidef" else "]"),
        deviations,
        JACOBIAN_RTOL,
        seed,
    )
    logger.info(f"Jacobian check {report.name}: max deviation {report.max_residual:.3e}")
    return report


CHECK_INFO = {
    "name": "jacobians",
    "description": "Analytic change-of-variables Jacobians against finite differences",
    "functions": {
        "jacobian_check": {
            "description": "Relative deviation at interior model draws",
            "parameters": ["case", "trials", "seed", "beta", "n", "m", "law", "threads"],
            "handler": jacobian_check,
        }
    },
}
