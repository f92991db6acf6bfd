"""
Density Module - Normalization constants and joint densities
"""

from .constants import log_norm_constants, log_g, log_c, log_l, log_d
from .joint import (
    DensityParams,
    log_density_spectral,
    log_density_perturbed,
    log_density_perturbed_gaussian,
    log_density_perturbed_laguerre,
    log_density_perturbed_laguerre_semidef,
    log_density_stockmann_seba,
    stockmann_seba_offset,
    log_density_chi_half_display,
    log_density_laguerre_gamma_display,
)

__all__ = [
    "log_norm_constants",
    "log_g",
    "log_c",
    "log_l",
    "log_d",
    "DensityParams",
    "log_density_spectral",
    "log_density_perturbed",
    "log_density_perturbed_gaussian",
    "log_density_perturbed_laguerre",
    "log_density_perturbed_laguerre_semidef",
    "log_density_stockmann_seba",
    "stockmann_seba_offset",
    "log_density_chi_half_display",
    "log_density_laguerre_gamma_display",
]
