"""
Checks Module - Verification suites run by the harness
"""

from .reports import TestReport, ProbePoint, probe_points, ks_two_sample, ks_one_sample, bonferroni
from .sampler_laws_check import check_sampler_laws, CHECK_INFO as SAMPLER_LAWS_INFO
from .ks_calibration_check import check_ks_calibration, CHECK_INFO as KS_CALIBRATION_INFO
from .cross_dense_check import cross_validate_dense, probe_residual, CHECK_INFO as CROSS_DENSE_INFO
from .jacobian_check import jacobian_check, CHECK_INFO as JACOBIANS_INFO
from .change_of_variables_check import change_of_variables_sweep, CHECK_INFO as CHANGE_OF_VARIABLES_INFO
from .normalization_check import normalization_mc, CHECK_INFO as NORMALIZATION_INFO
from .stockmann_seba_check import stockmann_seba_check, CHECK_INFO as STOCKMANN_SEBA_INFO
from .identities_check import identities_check, CHECK_INFO as IDENTITIES_INFO
from .roundtrip_check import roundtrip_check, roundtrip_residuals, CHECK_INFO as ROUNDTRIP_INFO
from .configuration_check import configuration_check, CHECK_INFO as CONFIGURATION_INFO

# Registry of all verification suites
CHECKS_REGISTRY = {
    "sampler-laws": SAMPLER_LAWS_INFO,
    "ks-calibration": KS_CALIBRATION_INFO,
    "cross-dense": CROSS_DENSE_INFO,
    "jacobians": JACOBIANS_INFO,
    "change-of-variables": CHANGE_OF_VARIABLES_INFO,
    "normalization": NORMALIZATION_INFO,
    "stockmann-seba": STOCKMANN_SEBA_INFO,
    "identities": IDENTITIES_INFO,
    "roundtrip": ROUNDTRIP_INFO,
    "configuration": CONFIGURATION_INFO,
}

__all__ = [
    # Reports
    "TestReport",
    "ProbePoint",
    "probe_points",
    "ks_two_sample",
    "ks_one_sample",
    "bonferroni",
    # Suites
    "check_sampler_laws",
    "check_ks_calibration",
    "cross_validate_dense",
    "probe_residual",
    "jacobian_check",
    "change_of_variables_sweep",
    "normalization_mc",
    "stockmann_seba_check",
    "identities_check",
    "roundtrip_check",
    "roundtrip_residuals",
    "configuration_check",
    # Registry
    "CHECKS_REGISTRY",
]
