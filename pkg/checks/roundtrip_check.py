"""
Roundtrip Check - Two-route spectra and the forward/inverse bijection over model draws
"""

import logging
from typing import Dict

import numpy as np

from checks.model_draws import draw_model
from checks.reports import TestReport, residual_report
from ensembles.models import CouplingLaw, EnsembleSpec
from harness.parallel import map_substreams
from perturbation.maps import eigenvalues_direct, inverse_map, match_spectra, split_zero_eigenvalues
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

ROUNDTRIP_RTOL = 1e-8


def roundtrip_residuals(spec: EnsembleSpec, law: CouplingLaw, rng: RngStream) -> Dict[str, float]:
    """
    Residuals for one draw, each relative to max(1, ||J||).

    two_route: direct characteristic-polynomial roots against forward_map
    inverse: inverse_map(forward_map(mu, l)) against (mu, l)
    constraint: |sum Arg z - pi/2| for the rank-deficient case
    """
    draw = draw_model(rng, spec, law)
    scale = max(1.0, draw.jacobi.norm(), draw.l)
    direct = eigenvalues_direct(draw.jacobi, draw.l)
    if spec.is_semidefinite:
        direct, _ = split_zero_eigenvalues(direct, draw.jacobi.norm(), expected=spec.n - spec.m - 1)
    two_route, _ = match_spectra(direct.z, draw.z.z)

    mu_back, l_back = inverse_map(draw.z)
    inverse = max(
        float(np.abs(mu_back.lambdas - draw.mu.lambdas).max()),
        float(np.abs(mu_back.weights - draw.mu.weights).max()),
        abs(l_back - draw.l),
    )
    residuals = {"two_route": two_route / scale, "inverse": inverse / scale}
    if spec.is_semidefinite:
        residuals["constraint"] = abs(float(draw.z.arguments.sum()) - 0.5 * np.pi)
    return residuals


def roundtrip_check(
    spec: EnsembleSpec, law: CouplingLaw, samples: int, seed: int, threads: int = 1
) -> TestReport:
    """Worst roundtrip, two-route and constraint residuals over ``samples`` draws."""
    per_draw = map_substreams(lambda rng: roundtrip_residuals(spec, law, rng), seed, samples, threads, key=11)
    worst: Dict[str, float] = {"two_route": 0.0, "inverse": 0.0}
    if spec.is_semidefinite:
        worst["constraint"] = 0.0
    for residuals in per_draw:
        for name, value in residuals.items():
            worst[name] = max(worst[name], value)
    report = residual_report(
        f"roundtrip[{spec.label}]",
        [max(r.values()) for r in per_draw],
        ROUNDTRIP_RTOL,
        seed,
        **worst,
    )
    logger.info(f"Roundtrip {spec.label}: {worst}")
    return report


CHECK_INFO = {
    "name": "roundtrip",
    "description": "Forward/inverse bijection and two-route eigenvalue agreement",
    "functions": {
        "roundtrip_check": {
            "description": "Worst residuals over model draws",
            "parameters": ["spec", "law", "samples", "seed", "threads"],
            "handler": roundtrip_check,
        }
    },
}
