"""
Configuration Check - Model draws land in their configuration space, and the
deterministic argument bound holds for hand-built positive semi-definite matrices
"""

import logging
from typing import List

import numpy as np

from checks.model_draws import draw_model
from checks.reports import TestReport
from ensembles.models import CouplingLaw, EnsembleSpec
from harness.parallel import map_substreams
from jacobi.tridiagonal import bidiag_square
from jacobi.types import Bidiagonal
from perturbation.configuration import (
    config_gaussian,
    config_laguerre_definite,
    config_laguerre_semidefinite,
    config_psd_corollary,
)
from perturbation.maps import eigenvalues_direct, perturbed_eigenvalues, split_zero_eigenvalues
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

SEMIDEFINITE_TOL = 1e-8


def _violates(spec: EnsembleSpec, law: CouplingLaw, rng: RngStream) -> bool:
    """
    True when a draw leaves its configuration space.

    The zero count comes from the characteristic polynomial; the predicates
    see the secular-polished spectrum so tiny imaginary parts keep their sign.
    """
    draw = draw_model(rng, spec, law)
    if spec.kind == "gaussian":
        return not config_gaussian(draw.z)
    if not spec.is_semidefinite:
        return not config_laguerre_definite(draw.z)
    direct = eigenvalues_direct(draw.jacobi, draw.l)
    _, zeros = split_zero_eigenvalues(direct, draw.jacobi.norm())
    if zeros != spec.n - spec.m - 1:
        return True
    return not config_laguerre_semidefinite(draw.z, SEMIDEFINITE_TOL)


def _psd_violates(n: int, rng: RngStream) -> bool:
    """Random J = B^T B with some entries of B zeroed, random l."""
    main = rng.uniform(n) * 3.0
    upper = rng.uniform(n - 1) * 3.0 if n > 1 else np.zeros(0)
    main[rng.uniform(n) < 0.2] = 0.0
    if n > 1:
        upper[rng.uniform(n - 1) < 0.2] = 0.0
    J = bidiag_square(Bidiagonal(main, upper))
    l = float(-np.log(rng.uniform()) * 2.0)
    z, _ = perturbed_eigenvalues(J, l)
    return not config_psd_corollary(z)


def configuration_check(
    spec: EnsembleSpec, law: CouplingLaw, samples: int, seed: int, threads: int = 1
) -> List[TestReport]:
    """
    Count configuration-space violations among model draws; zero are allowed.
    Laguerre ensembles also get a deterministic-corollary report on random
    positive semi-definite Jacobi matrices of the same order.
    """
    flags = map_substreams(lambda rng: _violates(spec, law, rng), seed, samples, threads, key=12)
    violations = int(sum(flags))
    reports = [
        TestReport(
            name=f"configuration[{spec.label}]",
            samples=samples,
            statistic=float(violations),
            threshold=0.0,
            passed=violations == 0,
            seed=seed,
        )
    ]
    if spec.kind == "laguerre":
        psd = map_substreams(lambda rng: _psd_violates(spec.n, rng), seed, samples, threads, key=13)
        psd_violations = int(sum(psd))
        reports.append(
            TestReport(
                name=f"configuration.psd_corollary[n={spec.n}]",
                samples=samples,
                statistic=float(psd_violations),
                threshold=0.0,
                passed=psd_violations == 0,
                seed=seed,
            )
        )
    for report in reports:
        logger.info(f"{report.name}: {int(report.statistic)} violations in {samples} draws")
    return reports


CHECK_INFO = {
    "name": "configuration",
    "description": "Configuration spaces of the perturbed spectra",
    "functions": {
        "configuration_check": {
            "description": "Violation counts for model draws and hand-built PSD matrices",
            "parameters": ["spec", "law", "samples", "seed", "threads"],
            "handler": configuration_check,
        }
    },
}
