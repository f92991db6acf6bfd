"""
Normalization Check - Monte Carlo checks that the perturbed-eigenvalue
densities carry the right normalization

"ratio" scores model draws by exp(change-of-variables residual) and expects
mean 1. "importance" (Gaussian only) integrates the density against an
independent proposal fitted to a pilot run of the model.
"""

import logging
from typing import Literal, Tuple

import numpy as np

from checks.model_draws import change_of_variables_residual, draw_model
from checks.reports import TestReport
from density.joint import DensityParams, log_density_perturbed_gaussian
from ensembles.models import CouplingLaw, EnsembleSpec
from errors import ParameterError
from harness.parallel import map_substreams
from randomness.distributions import DistSpec, log_pdf, sample_gamma, sample_normal
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

RATIO_RTOL = 0.02
PILOT_SIZE = 2000


def _ratio_scores(spec: EnsembleSpec, law: CouplingLaw, samples: int, seed: int, threads: int) -> np.ndarray:
    def one(rng: RngStream) -> float:
        return float(np.exp(change_of_variables_residual(spec, law, draw_model(rng, spec, law))))

    return np.asarray(map_substreams(one, seed, samples, threads, key=6))


def _fit_proposal(
    spec: EnsembleSpec, law: CouplingLaw, seed: int, threads: int
) -> Tuple[DistSpec, float, DistSpec]:
    """Normal for real parts, gamma for imaginary parts, from a pilot run."""

    def one(rng: RngStream) -> np.ndarray:
        return draw_model(rng, spec, law).z.z

    pilot = np.concatenate(map_substreams(one, seed, PILOT_SIZE, threads, key=7))
    centre = float(pilot.real.mean())
    spread = 1.5 * float(pilot.real.std())
    shape = min(1.0, 0.5 * spec.beta)
    scale = 2.0 * max(float(pilot.imag.mean()) / shape, law.tail_scale)
    return DistSpec.normal(spread), centre, DistSpec.gamma(shape, scale)


def _importance_weights(
    spec: EnsembleSpec, law: CouplingLaw, samples: int, seed: int, threads: int
) -> np.ndarray:
    real_dist, centre, imag_dist = _fit_proposal(spec, law, seed, threads)
    params = DensityParams(spec=spec, law=law)
    n = spec.n

    def one(rng: RngStream) -> float:
        x = centre + sample_normal(rng, real_dist.sigma, n)
        y = sample_gamma(rng, imag_dist.shape, imag_dist.scale, n)
        log_q = float(np.sum(log_pdf(real_dist, x - centre)) + np.sum(log_pdf(imag_dist, y)))
        return float(np.exp(log_density_perturbed_gaussian(params, x + 1j * y) - log_q))

    return np.asarray(map_substreams(one, seed, samples, threads, key=8))


def normalization_mc(
    spec: EnsembleSpec,
    law: CouplingLaw,
    samples: int,
    seed: int,
    method: Literal["ratio", "importance"] = "ratio",
    threads: int = 1,
) -> TestReport:
    """
    Monte Carlo estimate that should equal 1.

    Args:
        spec: Ensemble
        law: Coupling law
        samples: Number of draws
        seed: Root seed
        method: "ratio" or "importance"
        threads: Worker cap

    Returns:
        TestReport with the mean as statistic; "ratio" passes within 2%,
        "importance" within max(2%, four standard errors)

    Raises:
        ParameterError: importance sampling requested for a Laguerre ensemble
    """
    if method == "ratio":
        values = _ratio_scores(spec, law, samples, seed, threads)
    elif method == "importance":
        if spec.kind != "gaussian":
            raise ParameterError("importance normalization is implemented for gaussian ensembles only")
        values = _importance_weights(spec, law, samples, seed, threads)
    else:
        raise ParameterError(f"unknown normalization method '{method}'")

    mean = float(values.mean()) if values.size else float("nan")
    stderr = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    tol = RATIO_RTOL if method == "ratio" else max(RATIO_RTOL, 4.0 * stderr)
    report = TestReport(
        name=f"normalization.{method}[{spec.label}]",
        samples=int(values.size),
        statistic=mean,
        max_residual=abs(mean - 1.0),
        threshold=tol,
        passed=bool(np.isfinite(mean) and abs(mean - 1.0) <= tol),
        seed=seed,
        details={"stderr": stderr},
    )
    logger.info(f"Normalization {method} {spec.label}: mean {mean:.5f} +/- {stderr:.5f}")
    return report


CHECK_INFO = {
    "name": "normalization",
    "description": "Monte Carlo normalization of the perturbed-eigenvalue densities",
    "functions": {
        "normalization_mc": {
            "description": "Ratio or importance-sampling estimate of total mass",
            "parameters": ["spec", "law", "samples", "seed", "method", "threads"],
            "handler": normalization_mc,
        }
    },
}
