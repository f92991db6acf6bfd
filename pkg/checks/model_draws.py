"""
Model Draws - One sampled (J, l) with its spectral measure and perturbed
spectrum, plus the pointwise change-of-variables residual shared by several suites
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from density.joint import DensityParams, log_density_perturbed, log_density_spectral
from ensembles.models import CouplingLaw, EnsembleSpec
from ensembles.samplers import coupling_log_density, sample_coupling, sample_jacobi
from jacobi.spectral import spectral_measure
from jacobi.types import Bidiagonal, JacobiMatrix, SpectralMeasure
from perturbation.jacobians import log_jacobian_gaussian, log_jacobian_laguerre_semidefinite
from perturbation.maps import PerturbedSpectrum, forward_map
from randomness.rng import RngStream

logger = logging.getLogger(__name__)


@dataclass
class ModelDraw:
    """
    J + i l E11 from the model together with the measure and spectrum of the
    block that feels the perturbation. In the rank-deficient case ``mu`` has
    its zero atom snapped to 0 and ``z`` holds the m+1 non-zero eigenvalues.
    """

    jacobi: JacobiMatrix
    bidiagonal: Optional[Bidiagonal]
    l: float
    mu: SpectralMeasure
    z: PerturbedSpectrum


def draw_model(rng: RngStream, spec: EnsembleSpec, law: CouplingLaw) -> ModelDraw:
    J, B = sample_jacobi(rng, spec)
    l = sample_coupling(rng, law, spec.beta, spec.n)
    if spec.is_semidefinite:
        mu = spectral_measure(J.leading_block()).snap_zero_atom()
    else:
        mu = spectral_measure(J)
    return ModelDraw(J, B, l, mu, forward_map(mu, l))


def change_of_variables_residual(spec: EnsembleSpec, law: CouplingLaw, draw: ModelDraw) -> float:
    """
    log p_z + log |Jac| - log p_(lambda, w) - log F, with the labeling term
    log(m+1) added in the rank-deficient case. Zero when the densities agree.
    """
    params = DensityParams(spec=spec, law=law)
    log_pz = log_density_perturbed(params, draw.z)
    if spec.is_semidefinite:
        log_jac = log_jacobian_laguerre_semidefinite(draw.mu, draw.l, draw.z)
        labeling = np.log(spec.m + 1.0)
    else:
        log_jac = log_jacobian_gaussian(draw.mu, draw.l, draw.z)
        labeling = 0.0
    rhs = log_density_spectral(spec, draw.mu) + coupling_log_density(law, spec.beta, spec.n, draw.l)
    residual = log_pz + log_jac + labeling - rhs
    if not np.isfinite(residual):
        logger.warning(f"Non-finite change-of-variables residual for {spec.label}, l={draw.l:.6g}")
        return float("inf")
    return float(residual)
