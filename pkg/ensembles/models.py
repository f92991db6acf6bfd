"""
Ensemble Models - Parameter models for the beta-ensembles, the coupling law
and a perturbed sample
"""

from dataclasses import dataclass
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import ParameterError
from jacobi.types import Bidiagonal, JacobiMatrix
from randomness.distributions import DistSpec


class EnsembleSpec(BaseModel):
    """
    Gaussian (GbetaE_n) or Laguerre (LbetaE_(m,n)) ensemble.

    ``m`` is required for Laguerre and ignored for Gaussian. m = 0 is
    accepted and gives the zero matrix.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["gaussian", "laguerre"]
    beta: float = Field(..., gt=0)
    n: int = Field(..., ge=1)
    m: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _drop_gaussian_m(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("kind") == "gaussian":
            data = {**data, "m": None}
        return data

    @model_validator(mode="after")
    def _check_m(self) -> "EnsembleSpec":
        if self.kind == "laguerre" and self.m is None:
            raise ValueError("laguerre ensembles need m")
        return self

    @property
    def is_semidefinite(self) -> bool:
        """Laguerre with m < n: rank-deficient, one atom at zero."""
        return self.kind == "laguerre" and self.m < self.n

    @property
    def a(self) -> float:
        """Laguerre exponent |m - n| + 1 - 2/beta."""
        if self.kind != "laguerre":
            raise ParameterError("the exponent a is defined for laguerre ensembles only")
        return abs(self.m - self.n) + 1.0 - 2.0 / self.beta

    @property
    def active_size(self) -> int:
        """Number of atoms in the spectral measure / non-zero perturbed eigenvalues."""
        return self.m + 1 if self.is_semidefinite else self.n

    @property
    def label(self) -> str:
        if self.kind == "gaussian":
            return f"gaussian(beta={self.beta:g}, n={self.n})"
        return f"laguerre(beta={self.beta:g}, m={self.m}, n={self.n})"


class CouplingLaw(BaseModel):
    """
    Law F(l) dl of the perturbation strength l.

    gamma_type(sigma): l ~ sigma^2 chi^2_{beta n} = Gamma(beta n/2, 2 sigma^2)
    chi_half: l ~ chi_{beta n/2}
    custom_gamma(shape, scale): l ~ Gamma(shape, scale)
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["gamma_type", "chi_half", "custom_gamma"] = "gamma_type"
    sigma: float = Field(default=1.0, gt=0)
    shape: Optional[float] = Field(default=None, gt=0)
    scale: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _check_custom(self) -> "CouplingLaw":
        if self.kind == "custom_gamma" and (self.shape is None or self.scale is None):
            raise ValueError("custom_gamma needs shape and scale")
        return self

    def dist(self, beta: float, n: int) -> DistSpec:
        """The DistSpec of l for the ambient (beta, n)."""
        if self.kind == "gamma_type":
            return DistSpec.gamma(0.5 * beta * n, 2.0 * self.sigma**2)
        if self.kind == "chi_half":
            return DistSpec.chi(0.5 * beta * n)
        return DistSpec.gamma(self.shape, self.scale)

    @property
    def tail_scale(self) -> float:
        """Scale of the exponential tail of F (1 for the sub-exponential chi law)."""
        if self.kind == "gamma_type":
            return 2.0 * self.sigma**2
        if self.kind == "custom_gamma":
            return self.scale
        return 1.0


@dataclass
class PerturbedSample:
    """J + i l E11 with l independent of J."""

    jacobi: JacobiMatrix
    l: float
    bidiagonal: Optional[Bidiagonal] = None

    def __post_init__(self):
        self.l = float(self.l)
        if not np.isfinite(self.l) or self.l <= 0:
            raise ParameterError(f"coupling l must be positive, got {self.l}")
