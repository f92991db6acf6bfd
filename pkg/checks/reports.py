"""
Reports - Result records for verification suites, probe points and the
two-sample Kolmogorov-Smirnov helper
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Callable, ClassVar, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from errors import ParameterError

logger = logging.getLogger(__name__)

KS_ALPHA = 1e-3


class TestReport(BaseModel):
    """
    Outcome of one verification suite.

    ``passed`` serializes as ``pass``. Exactly one of ``p_value`` and
    ``max_residual`` is normally set, matching the kind of threshold.
    """

    __test__: ClassVar[bool] = False

    model_config = ConfigDict(populate_by_name=True)

    name: str
    samples: int = Field(..., ge=0)
    statistic: float
    p_value: Optional[float] = None
    max_residual: Optional[float] = None
    threshold: float
    passed: bool = Field(..., alias="pass")
    seed: int
    details: Dict[str, Any] = Field(default_factory=dict)

    def to_json_line(self) -> str:
        return json.dumps(self.model_dump(by_alias=True), sort_keys=True, default=_json_default)

    @classmethod
    def failure(cls, name: str, seed: int, error: str, error_type: str = "RMTError") -> "TestReport":
        """A failed report for a suite that raised instead of finishing."""
        return cls(
            name=name,
            samples=0,
            statistic=float("nan"),
            threshold=0.0,
            passed=False,
            seed=seed,
            details={"error": error, "error_type": error_type},
        )


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def residual_report(name: str, residuals: Sequence[float], threshold: float, seed: int, **details) -> TestReport:
    """Report on the largest of a batch of residuals; non-finite residuals fail."""
    values = np.asarray(list(residuals), dtype=float)
    worst = float(values.max()) if values.size else 0.0
    if values.size and not np.all(np.isfinite(values)):
        worst = float("inf")
    return TestReport(
        name=name,
        samples=int(values.size),
        statistic=worst,
        max_residual=worst,
        threshold=threshold,
        passed=bool(worst <= threshold),
        seed=seed,
        details=details,
    )


@dataclass(frozen=True)
class ProbePoint:
    """Complex abscissa at which two characteristic polynomials are compared."""

    value: complex

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ParameterError(f"probe point must be finite, got {self.value}")


def probe_points(count: int, radius: float, phase: float = 0.1) -> List[ProbePoint]:
    """``count`` equally spaced points on the circle |zeta| = radius."""
    angles = phase + 2.0 * np.pi * np.arange(count) / count
    return [ProbePoint(complex(radius * np.exp(1j * t))) for t in angles]


def ks_two_sample(
    a: Sequence[float], b: Sequence[float], name: str = "ks_two_sample", seed: int = 0, alpha: float = KS_ALPHA
) -> TestReport:
    """
    Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.

    Args:
        a: First sample
        b: Second sample
        name: Report name
        seed: Seed the samples came from
        alpha: Significance level

    Returns:
        TestReport passing when p >= alpha
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ParameterError("KS test needs two non-empty samples")
    result = stats.ks_2samp(a, b, method="asymp")
    p = float(result.pvalue)
    return TestReport(
        name=name,
        samples=int(min(a.size, b.size)),
        statistic=float(result.statistic),
        p_value=p,
        threshold=alpha,
        passed=bool(p >= alpha),
        seed=seed,
    )


def ks_one_sample(
    sample: Sequence[float], cdf: Callable[[np.ndarray], np.ndarray], name: str, seed: int, alpha: float = KS_ALPHA
) -> TestReport:
    """One-sample Kolmogorov-Smirnov test against a CDF callable."""
    sample = np.asarray(sample, dtype=float)
    if sample.size == 0:
        raise ParameterError("KS test needs a non-empty sample")
    result = stats.kstest(sample, cdf)
    p = float(result.pvalue)
    return TestReport(
        name=name,
        samples=int(sample.size),
        statistic=float(result.statistic),
        p_value=p,
        threshold=alpha,
        passed=bool(p >= alpha),
        seed=seed,
    )


def bonferroni(name: str, reports: Sequence[TestReport], seed: int, alpha: float = KS_ALPHA) -> TestReport:
    """Combine KS reports: pass iff min p >= alpha / count."""
    if not reports:
        raise ParameterError("nothing to combine")
    level = alpha / len(reports)
    p_min = min(r.p_value for r in reports)
    return TestReport(
        name=name,
        samples=max(r.samples for r in reports),
        statistic=max(r.statistic for r in reports),
        p_value=p_min,
        threshold=level,
        passed=bool(p_min >= level),
        seed=seed,
        details={r.name: r.p_value for r in reports},
    )
