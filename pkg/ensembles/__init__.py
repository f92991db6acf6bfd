"""
Ensembles Module - Gaussian and Laguerre beta-ensembles and their rank-one perturbations
"""

from .models import EnsembleSpec, CouplingLaw, PerturbedSample
from .samplers import (
    sample_gbeta,
    sample_lbeta,
    sample_dense,
    sample_coupling,
    sample_coupling_row,
    coupling_log_density,
    sample_jacobi,
    sample_perturbed,
)

__all__ = [
    "EnsembleSpec",
    "CouplingLaw",
    "PerturbedSample",
    "sample_gbeta",
    "sample_lbeta",
    "sample_dense",
    "sample_coupling",
    "sample_coupling_row",
    "coupling_log_density",
    "sample_jacobi",
    "sample_perturbed",
]
