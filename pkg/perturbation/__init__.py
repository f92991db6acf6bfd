"""
Perturbation Module - Spectra of J + i l E11, the (mu, l) <-> z bijection,
configuration spaces, Jacobians and coefficient identities
"""

from .roots import ComplexPoly, poly_roots, root_multiplicities
from .maps import (
    PerturbedSpectrum,
    canonical_order,
    eigenvalues_direct,
    forward_map,
    inverse_map,
    match_spectra,
    perturbed_eigenvalues,
    split_zero_eigenvalues,
)
from .configuration import (
    config_gaussian,
    config_laguerre_definite,
    config_laguerre_semidefinite,
    config_psd_corollary,
    config_negative_count,
)
from .jacobians import (
    jacobian_gaussian,
    log_jacobian_gaussian,
    jacobian_laguerre_semidefinite,
    log_jacobian_laguerre_semidefinite,
    fd_jacobian_gaussian,
    fd_jacobian_laguerre_semidefinite,
)
from .identities import IdentityReport, identity_suite, laguerre_product_identities

__all__ = [
    "ComplexPoly",
    "poly_roots",
    "root_multiplicities",
    "PerturbedSpectrum",
    "canonical_order",
    "eigenvalues_direct",
    "forward_map",
    "inverse_map",
    "match_spectra",
    "perturbed_eigenvalues",
    "split_zero_eigenvalues",
    "config_gaussian",
    "config_laguerre_definite",
    "config_laguerre_semidefinite",
    "config_psd_corollary",
    "config_negative_count",
    "jacobian_gaussian",
    "log_jacobian_gaussian",
    "jacobian_laguerre_semidefinite",
    "log_jacobian_laguerre_semidefinite",
    "fd_jacobian_gaussian",
    "fd_jacobian_laguerre_semidefinite",
    "IdentityReport",
    "identity_suite",
    "laguerre_product_identities",
]
