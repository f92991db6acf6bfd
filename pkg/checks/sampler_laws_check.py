"""
Sampler Laws Check - KS tests of every basic sampler against its numerically
integrated CDF
"""

import logging
from typing import List, Sequence

from checks.reports import KS_ALPHA, TestReport, bonferroni, ks_one_sample
from randomness.distributions import DistSpec, numeric_cdf, sample
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

DEFAULT_KS = (0.5, 1.0, 2.0, 3.7, 10.0)


def _family(kind: str, k: float) -> DistSpec:
    if kind == "gamma":
        return DistSpec.gamma(k, 1.0)
    if kind == "normal":
        return DistSpec.normal(k)
    return DistSpec(kind=kind, k=k)


def check_sampler_laws(
    seed: int,
    samples: int = 100000,
    ks: Sequence[float] = DEFAULT_KS,
    kinds: Sequence[str] = ("chi", "chi_tilde", "chi_squared", "gamma", "normal"),
) -> List[TestReport]:
    """
    One Bonferroni-combined report per distribution family.

    Args:
        seed: Root seed
        samples: Draws per (family, k)
        ks: Degrees of freedom (shape for gamma, sigma for normal)
        kinds: Families to test

    Returns:
        List of TestReport, one per family
    """
    root = RngStream(seed, (1,))
    reports = []
    for fi, kind in enumerate(kinds):
        per_k = []
        for ki, k in enumerate(ks):
            dist = _family(kind, k)
            draws = sample(root.substream(fi).substream(ki), dist, samples)
            per_k.append(ks_one_sample(draws, numeric_cdf(dist), f"{kind}(k={k:g})", seed))
        combined = bonferroni(f"sampler_laws.{kind}", per_k, seed, KS_ALPHA)
        logger.info(f"Sampler law {kind}: min p = {combined.p_value:.3e}, pass={combined.passed}")
        reports.append(combined)
    return reports


CHECK_INFO = {
    "name": "sampler-laws",
    "description": "KS tests of the normal, chi, chi-tilde, chi-squared and gamma samplers",
    "functions": {
        "check_sampler_laws": {
            "description": "KS against numerically integrated CDFs",
            "parameters": ["seed", "samples", "ks", "kinds"],
            "handler": check_sampler_laws,
        }
    },
}
