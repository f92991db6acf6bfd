"""
Stockmann-Seba Check - Substitution of specific coupling laws into the
general Gaussian and Laguerre densities against their closed forms
"""

import logging
from typing import List

import numpy as np

from checks.model_draws import draw_model
from checks.reports import TestReport, residual_report
from density.joint import (
    DensityParams,
    log_density_chi_half_display,
    log_density_laguerre_gamma_display,
    log_density_perturbed,
    log_density_perturbed_gaussian,
    log_density_stockmann_seba,
    stockmann_seba_offset,
)
from ensembles.models import CouplingLaw, EnsembleSpec
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

SUBSTITUTION_RTOL = 1e-10


def _random_upper_points(rng: RngStream, n: int) -> np.ndarray:
    x = 2.0 * rng.normal(n)
    y = -np.log(rng.uniform(n))
    return x + 1j * y


def _scaled(diff: float, *values: float) -> float:
    return abs(diff) / max(1.0, *(abs(v) for v in values))


def stockmann_seba_check(sigma: float, n: int, samples: int, seed: int, beta: float = 1.0) -> List[TestReport]:
    """
    Three substitution reports.

    1. F = GammaType(sigma): the general Gaussian density equals the closed
       form minus n (beta/2 - 1) log 2, pointwise.
    2. F = chi_{beta n/2}: the general density minus the unnormalized display
       is constant (compared over pairs of points).
    3. Definite Laguerre with F = GammaType(1): same constancy check at model draws.

    Args:
        sigma: Coupling scale
        n: Matrix order
        samples: Number of random points
        seed: Root seed
        beta: Dyson index
    """
    root = RngStream(seed, (9,))
    offset = stockmann_seba_offset(beta, n)

    gaussian = EnsembleSpec(kind="gaussian", beta=beta, n=n)
    gamma_params = DensityParams(spec=gaussian, law=CouplingLaw(kind="gamma_type", sigma=sigma))
    residuals = []
    for i in range(samples):
        z = _random_upper_points(root.substream(i), n)
        exact = log_density_perturbed_gaussian(gamma_params, z)
        display = log_density_stockmann_seba(beta, n, sigma, z)
        residuals.append(_scaled(exact - (display - offset), exact))
    closed_form = residual_report(
        f"stockmann_seba.gamma_type[beta={beta:g}, n={n}, sigma={sigma:g}]",
        residuals,
        SUBSTITUTION_RTOL,
        seed,
        display_offset=offset,
    )

    chi_params = DensityParams(spec=gaussian, law=CouplingLaw(kind="chi_half"))
    gaps = []
    reference = None
    for i in range(samples):
        z = _random_upper_points(root.substream(samples + i), n)
        exact = log_density_perturbed_gaussian(chi_params, z)
        gap = exact - log_density_chi_half_display(beta, z)
        if reference is None:
            reference = gap
        gaps.append(_scaled(gap - reference, exact))
    chi_half = residual_report(
        f"stockmann_seba.chi_half[beta={beta:g}, n={n}]", gaps, SUBSTITUTION_RTOL, seed, log_constant=reference
    )

    laguerre = EnsembleSpec(kind="laguerre", beta=beta, n=n, m=n + 1)
    law = CouplingLaw(kind="gamma_type", sigma=1.0)
    lag_params = DensityParams(spec=laguerre, law=law)
    lag_gaps = []
    reference = None
    for i in range(samples):
        z = draw_model(root.substream(2 * samples + i), laguerre, law).z
        exact = log_density_perturbed(lag_params, z)
        gap = exact - log_density_laguerre_gamma_display(beta, laguerre.a, z)
        if reference is None:
            reference = gap
        lag_gaps.append(_scaled(gap - reference, exact))
    laguerre_report = residual_report(
        f"stockmann_seba.laguerre_gamma[beta={beta:g}, n={n}]", lag_gaps, SUBSTITUTION_RTOL, seed,
        log_constant=reference,
    )

    for report in (closed_form, chi_half, laguerre_report):
        logger.info(f"{report.name}: max residual {report.max_residual:.3e}")
    return [closed_form, chi_half, laguerre_report]


CHECK_INFO = {
    "name": "stockmann-seba",
    "description": "Closed forms of the perturbed densities for specific coupling laws",
    "functions": {
        "stockmann_seba_check": {
            "description": "Pointwise substitution checks",
            "parameters": ["sigma", "n", "samples", "seed", "beta"],
            "handler": stockmann_seba_check,
        }
    },
}
