"""
Identities Check - Coefficient identities for every model draw, plus the
bidiagonal product identities in the rank-deficient Laguerre case
"""

import logging
from typing import Dict

from checks.model_draws import draw_model
from checks.reports import TestReport, residual_report
from ensembles.models import CouplingLaw, EnsembleSpec
from harness.parallel import map_substreams
from perturbation.identities import DEFAULT_TOL, identity_suite, laguerre_product_identities
from randomness.rng import RngStream

logger = logging.getLogger(__name__)


def identities_check(
    spec: EnsembleSpec, law: CouplingLaw, samples: int, seed: int, threads: int = 1
) -> TestReport:
    """
    Worst identity residual over ``samples`` model draws.

    Details carry the worst residual per identity.
    """

    def one(rng: RngStream) -> Dict[str, float]:
        draw = draw_model(rng, spec, law)
        residuals = dict(identity_suite(draw.mu, draw.l, draw.z).residuals)
        if spec.is_semidefinite and spec.m > 0:
            product = laguerre_product_identities(draw.bidiagonal, draw.mu, draw.z, draw.l)
            residuals.update({f"bidiagonal.{k}": v for k, v in product.residuals.items()})
        return residuals

    per_draw = map_substreams(one, seed, samples, threads, key=10)
    worst: Dict[str, float] = {}
    for residuals in per_draw:
        for name, value in residuals.items():
            worst[name] = max(worst.get(name, 0.0), value)
    report = residual_report(
        f"identities[{spec.label}]",
        [max(r.values()) for r in per_draw],
        DEFAULT_TOL,
        seed,
        **worst,
    )
    logger.info(f"Identities {spec.label}: worst residuals {worst}")
    return report


CHECK_INFO = {
    "name": "identities",
    "description": "Coefficient and bidiagonal product identities per model draw",
    "functions": {
        "identities_check": {
            "description": "Worst residual of each identity",
            "parameters": ["spec", "law", "samples", "seed", "threads"],
            "handler": identities_check,
        }
    },
}
