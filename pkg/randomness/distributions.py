"""
Distributions - Exact samplers, log-densities and CDFs for the normal, chi,
scaled chi, chi-squared and gamma laws

All chi-type laws are drawn through a single gamma primitive
(Marsaglia-Tsang squeeze with the shape < 1 boost), so any positive real
degrees-of-freedom parameter is supported.
"""

import logging
from typing import Callable, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy import integrate, special

from errors import ParameterError
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


class DistSpec(BaseModel):
    """
    One of Normal(sigma), Chi(k), ChiTilde(k), ChiSquared(k), Gamma(shape, scale).

    Only the parameters the kind uses are read; each must be positive.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["normal", "chi", "chi_tilde", "chi_squared", "gamma"]
    sigma: Optional[float] = None
    k: Optional[float] = None
    shape: Optional[float] = None
    scale: Optional[float] = None

    @model_validator(mode="after")
    def _check_parameters(self) -> "DistSpec":
        required = {
            "normal": ("sigma",),
            "chi": ("k",),
            "chi_tilde": ("k",),
            "chi_squared": ("k",),
            "gamma": ("shape", "scale"),
        }[self.kind]
        for name in required:
            value = getattr(self, name)
            if value is None or not np.isfinite(value) or value <= 0:
                raise ValueError(f"{self.kind} requires {name} > 0, got {value}")
        return self

    @classmethod
    def normal(cls, sigma: float = 1.0) -> "DistSpec":
        return cls(kind="normal", sigma=sigma)

    @classmethod
    def chi(cls, k: float) -> "DistSpec":
        return cls(kind="chi", k=k)

    @classmethod
    def chi_tilde(cls, k: float) -> "DistSpec":
        return cls(kind="chi_tilde", k=k)

    @classmethod
    def chi_squared(cls, k: float) -> "DistSpec":
        return cls(kind="chi_squared", k=k)

    @classmethod
    def gamma(cls, shape: float, scale: float = 1.0) -> "DistSpec":
        return cls(kind="gamma", shape=shape, scale=scale)

    @property
    def support_lower(self) -> float:
        return -np.inf if self.kind == "normal" else 0.0


def _require_positive(name: str, value: float) -> None:
    if not np.isfinite(value) or value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")


def _log_standard_gamma(rng: RngStream, shape: float, size: Optional[int]) -> ArrayLike:
    """
    Log of Gamma(shape, 1) draws.

    Marsaglia-Tsang for shape >= 1; for shape < 1 draw shape + 1 and add
    log(U) / shape. Working in logs keeps tiny shapes from underflowing.
    """
    boost = shape < 1.0
    a = shape + 1.0 if boost else shape
    d = a - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)

    count = 1 if size is None else int(size)
    out = np.empty(count)
    filled = 0
    while filled < count:
        need = count - filled
        z = rng.normal(need)
        u = rng.uniform(need)
        v = (1.0 + c * z) ** 3
        positive = v > 0
        log_v = np.log(np.where(positive, v, 1.0))
        accept = positive & (np.log(u) < 0.5 * z * z + d - d * v + d * log_v)
        accepted = np.log(d) + log_v[accept]
        out[filled:filled + accepted.size] = accepted
        filled += accepted.size

    if boost:
        out += np.log(rng.uniform(count)) / shape
    return out[0] if size is None else out


def sample_gamma(rng: RngStream, shape: float, scale: float, size: Optional[int] = None) -> ArrayLike:
    """
    Draw from Gamma(shape, scale); valid for every shape > 0.

    Args:
        rng: Random stream
        shape: Shape parameter
        scale: Scale parameter
        size: Number of draws, or None for a scalar

    Returns:
        Positive draw(s)
    """
    _require_positive("shape", shape)
    _require_positive("scale", scale)
    return scale * np.exp(_log_standard_gamma(rng, shape, size))


def sample_normal(rng: RngStream, sigma: float, size: Optional[int] = None) -> ArrayLike:
    """Draw from N(0, sigma^2)."""
    _require_positive("sigma", sigma)
    return sigma * rng.normal(size)


def sample_chi_squared(rng: RngStream, k: float, size: Optional[int] = None) -> ArrayLike:
    _require_positive("k", k)
    return sample_gamma(rng, 0.5 * k, 2.0, size)


def sample_chi(rng: RngStream, k: float, size: Optional[int] = None) -> ArrayLike:
    """Draw from chi_k as the square root of Gamma(k/2, 2)."""
    _require_positive("k", k)
    return np.exp(0.5 * (_log_standard_gamma(rng, 0.5 * k, size) + np.log(2.0)))


def sample_chi_tilde(rng: RngStream, k: float, size: Optional[int] = None) -> ArrayLike:
    """Draw from the scaled chi law, chi_k / sqrt(2)."""
    return sample_chi(rng, k, size) / np.sqrt(2.0)


def sample(rng: RngStream, dist: DistSpec, size: Optional[int] = None) -> ArrayLike:
    """Draw from any DistSpec."""
    if dist.kind == "normal":
        return sample_normal(rng, dist.sigma, size)
    if dist.kind == "chi":
        return sample_chi(rng, dist.k, size)
    if dist.kind == "chi_tilde":
        return sample_chi_tilde(rng, dist.k, size)
    if dist.kind == "chi_squared":
        return sample_chi_squared(rng, dist.k, size)
    return sample_gamma(rng, dist.shape, dist.scale, size)


def log_pdf(dist: DistSpec, x: ArrayLike) -> ArrayLike:
    """
    Natural log of the density of ``dist`` at ``x``.

    Args:
        dist: Distribution
        x: Point or array of points

    Returns:
        Log-density, -inf outside the support
    """
    x_arr = np.asarray(x, dtype=float)
    if dist.kind == "normal":
        s = dist.sigma
        result = -0.5 * (x_arr / s) ** 2 - np.log(s) - LOG_SQRT_2PI
        return result if result.ndim else float(result)

    inside = x_arr > 0
    safe = np.where(inside, x_arr, 1.0)
    log_x = np.log(safe)
    if dist.kind == "chi":
        k = dist.k
        value = (1.0 - 0.5 * k) * np.log(2.0) - special.gammaln(0.5 * k) + (k - 1.0) * log_x - 0.5 * safe**2
    elif dist.kind == "chi_tilde":
        k = dist.k
        value = np.log(2.0) - special.gammaln(0.5 * k) + (k - 1.0) * log_x - safe**2
    elif dist.kind == "chi_squared":
        h = 0.5 * dist.k
        value = -h * np.log(2.0) - special.gammaln(h) + (h - 1.0) * log_x - 0.5 * safe
    else:
        a, theta = dist.shape, dist.scale
        value = -special.gammaln(a) - a * np.log(theta) + (a - 1.0) * log_x - safe / theta
    result = np.where(inside, value, -np.inf)
    return result if result.ndim else float(result)


def cdf(dist: DistSpec, x: ArrayLike) -> ArrayLike:
    """Closed-form CDF through the regularized incomplete gamma function."""
    x_arr = np.asarray(x, dtype=float)
    if dist.kind == "normal":
        result = special.ndtr(x_arr / dist.sigma)
        return result if result.ndim else float(result)

    pos = np.maximum(x_arr, 0.0)
    if dist.kind == "chi":
        result = special.gammainc(0.5 * dist.k, 0.5 * pos**2)
    elif dist.kind == "chi_tilde":
        result = special.gammainc(0.5 * dist.k, pos**2)
    elif dist.kind == "chi_squared":
        result = special.gammainc(0.5 * dist.k, 0.5 * pos)
    else:
        result = special.gammainc(dist.shape, pos / dist.scale)
    return result if result.ndim else float(result)


def _density(dist: DistSpec) -> Callable[[float], float]:
    return lambda t: float(np.exp(log_pdf(dist, t)))


def _upper_reach(dist: DistSpec) -> float:
    """A point beyond which the mass is negligible."""
    if dist.kind == "normal":
        return 40.0 * dist.sigma
    if dist.kind == "gamma":
        return dist.scale * (dist.shape + 40.0 * np.sqrt(dist.shape) + 80.0)
    k = dist.k
    if dist.kind == "chi_squared":
        return k + 40.0 * np.sqrt(2.0 * k) + 80.0
    return np.sqrt(k + 40.0 * np.sqrt(2.0 * k) + 80.0)


def total_mass(dist: DistSpec) -> float:
    """Integral of exp(log_pdf) over the support by adaptive quadrature."""
    f = _density(dist)
    if dist.kind == "normal":
        pieces = [(-np.inf, 0.0), (0.0, np.inf)]
    else:
        pieces = [(0.0, 1.0), (1.0, np.inf)]
    mass = 0.0
    for lo, hi in pieces:
        value, err = integrate.quad(f, lo, hi, limit=200, epsabs=1e-13, epsrel=1e-11)
        mass += value
    logger.debug(f"Quadrature mass of {dist.kind}: {mass:.15f}")
    return mass


def numeric_cdf(dist: DistSpec, nodes: int = 1200) -> Callable[[ArrayLike], np.ndarray]:
    """
    CDF obtained by integrating the density numerically.

    The cumulative integral is tabulated on a grid that is geometric near the
    origin and linear further out, then interpolated.

    Args:
        dist: Distribution
        nodes: Grid size per region

    Returns:
        Vectorized callable x -> F(x)
    """
    f = _density(dist)
    reach = _upper_reach(dist)
    if dist.kind == "normal":
        grid = np.linspace(-reach, reach, 4 * nodes + 1)
        start, _ = integrate.quad(f, -np.inf, grid[0])
    else:
        near = np.geomspace(1e-14, 1.0, nodes)
        far = np.linspace(1.0, max(reach, 2.0), 2 * nodes)[1:]
        grid = np.concatenate(([0.0], near, far))
        start = 0.0

    pieces = np.empty(grid.size)
    pieces[0] = start
    for i in range(1, grid.size):
        value, _ = integrate.quad(f, grid[i - 1], grid[i], limit=100, epsabs=1e-15, epsrel=1e-12)
        pieces[i] = value
    cumulative = np.minimum(np.cumsum(pieces), 1.0)

    def evaluate(x: ArrayLike) -> np.ndarray:
        return np.interp(np.asarray(x, dtype=float), grid, cumulative, left=0.0, right=1.0)

    return evaluate
