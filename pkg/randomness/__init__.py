"""
Randomness Module - Seeded streams and the samplers every ensemble is built from
"""

from .rng import RngStream
from .distributions import (
    DistSpec,
    sample,
    sample_normal,
    sample_gamma,
    sample_chi,
    sample_chi_tilde,
    sample_chi_squared,
    log_pdf,
    cdf,
    numeric_cdf,
    total_mass,
)

__all__ = [
    "RngStream",
    "DistSpec",
    "sample",
    "sample_normal",
    "sample_gamma",
    "sample_chi",
    "sample_chi_tilde",
    "sample_chi_squared",
    "log_pdf",
    "cdf",
    "numeric_cdf",
    "total_mass",
]
