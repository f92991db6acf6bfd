"""
KS Calibration Check - Null rejection rate and separation power of the
two-sample KS test
"""

import logging
from typing import List

from checks.reports import KS_ALPHA, TestReport, ks_two_sample
from randomness.distributions import sample_normal
from randomness.rng import RngStream

logger = logging.getLogger(__name__)


def check_ks_calibration(seed: int, samples: int = 10000, repeats: int = 200) -> List[TestReport]:
    """
    Same sampler twice ``repeats`` times, then N(0,1) against N(3,1).

    The null report passes when fewer than 1% of repeats reject at 1e-3;
    the separation report passes when p < 1e-10.
    """
    root = RngStream(seed, (2,))
    rejections = 0
    for r in range(repeats):
        stream = root.substream(r)
        report = ks_two_sample(sample_normal(stream, 1.0, samples), sample_normal(stream, 1.0, samples), seed=seed)
        rejections += int(not report.passed)
    rate = rejections / max(repeats, 1)
    null = TestReport(
        name="ks_calibration.null",
        samples=samples,
        statistic=rate,
        threshold=0.01,
        passed=bool(rate < 0.01),
        seed=seed,
        details={"repeats": repeats, "rejections": rejections, "alpha": KS_ALPHA},
    )

    stream = root.substream(repeats)
    shifted = ks_two_sample(sample_normal(stream, 1.0, samples), 3.0 + sample_normal(stream, 1.0, samples), seed=seed)
    separation = TestReport(
        name="ks_calibration.separation",
        samples=samples,
        statistic=shifted.statistic,
        p_value=shifted.p_value,
        threshold=1e-10,
        passed=bool(shifted.p_value < 1e-10),
        seed=seed,
    )
    logger.info(f"KS calibration: null rejection rate {rate:.4f}, separation p={shifted.p_value:.3e}")
    return [null, separation]


CHECK_INFO = {
    "name": "ks-calibration",
    "description": "Null calibration and power of the two-sample KS test",
    "functions": {
        "check_ks_calibration": {
            "description": "Rejection rate under the null and p-value under a shift",
            "parameters": ["seed", "samples", "repeats"],
            "handler": check_ks_calibration,
        }
    },
}
