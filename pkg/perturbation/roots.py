"""
Roots - Monic complex polynomials and an Aberth-Ehrlich simultaneous rootfinder
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from errors import ParameterError, RootFindingError

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
MAX_ITERATIONS = 200
RESIDUAL_RTOL = 1e-10


@dataclass
class ComplexPoly:
    """
    Monic polynomial sum_j kappa_j z^j, coefficients lowest degree first.

    A non-monic input is divided through by its leading coefficient.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.size < 2:
            raise ParameterError("polynomial must have degree >= 1")
        if not np.all(np.isfinite(c)):
            raise ParameterError("polynomial coefficients must be finite")
        if c[-1] == 0:
            raise ParameterError("leading coefficient is zero")
        if c[-1] != 1:
            c = c / c[-1]
            c[-1] = 1.0
        self.coeffs = c

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)

    def derivative_at(self, z):
        powers = np.arange(1, self.coeffs.size)
        return np.polyval((self.coeffs[1:] * powers)[::-1], z)

    def scale_at(self, z):
        """sum_j |kappa_j| |z|^j, the natural size of p(z)."""
        return np.polyval(np.abs(self.coeffs)[::-1], np.abs(z))

    @classmethod
    def from_roots(cls, roots) -> "ComplexPoly":
        return cls(np.poly(np.asarray(roots, dtype=complex))[::-1])


def _initial_guesses(poly: ComplexPoly) -> np.ndarray:
    c = poly.coeffs
    n = poly.degree
    center = -c[n - 1] / n
    # Fujiwara bound on |root|
    ks = np.arange(1, n + 1)
    terms = np.abs(c[n - ks]) ** (1.0 / ks)
    terms[-1] = (np.abs(c[0]) / 2.0) ** (1.0 / n)
    radius = max(2.0 * terms.max(), EPS)
    phase = np.random.default_rng(n).uniform(0.0, 2.0 * np.pi)
    return center + radius * np.exp(1j * (2.0 * np.pi * np.arange(n) / n + phase))


def _aberth(poly: ComplexPoly) -> Tuple[np.ndarray, bool]:
    x = _initial_guesses(poly)
    n = x.size
    active = np.ones(n, dtype=bool)
    for iteration in range(MAX_ITERATIONS):
        p = poly(x)
        converged = np.abs(p) <= 4.0 * EPS * poly.scale_at(x)
        active &= ~converged
        if not active.any():
            logger.debug(f"Aberth converged after {iteration} iterations")
            return x, True
        dp = poly.derivative_at(x)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        ratio = p / dp
        step = ratio / (1.0 - ratio * inv.sum(axis=1))
        step[~active | ~np.isfinite(step)] = 0.0
        x = x - step
        if np.all(np.abs(step[active]) <= EPS * np.maximum(np.abs(x[active]), 1.0)):
            return x, True
    return x, False


def _newton_polish(poly: ComplexPoly, x: np.ndarray, steps: int = 3) -> np.ndarray:
    x = x.copy()
    for _ in range(steps):
        p = poly(x)
        dp = poly.derivative_at(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            candidate = x - p / dp
        better = np.isfinite(candidate) & (np.abs(poly(candidate)) < np.abs(p))
        x = np.where(better, candidate, x)
    return x


def poly_roots(poly: ComplexPoly) -> np.ndarray:
    """
    All roots of a monic polynomial, with multiplicity.

    Exact zero low-order coefficients are split off as exact zero roots;
    the rest go through Aberth-Ehrlich iteration and a Newton polish.

    Args:
        poly: Monic polynomial

    Returns:
        Array of complex roots

    Raises:
        RootFindingError: residual above 1e-10 of the coefficient scale
    """
    c = poly.coeffs
    zeros = 0
    while zeros < poly.degree and c[zeros] == 0:
        zeros += 1
    roots = [np.zeros(zeros, dtype=complex)]
    if zeros < poly.degree:
        reduced = ComplexPoly(c[zeros:])
        if reduced.degree == 1:
            found = np.array([-reduced.coeffs[0]])
        else:
            found, converged = _aberth(reduced)
            found = _newton_polish(reduced, found)
            if not converged:
                logger.warning(f"Aberth hit {MAX_ITERATIONS} iterations on a degree {reduced.degree} polynomial")
        residual = np.abs(reduced(found))
        limit = RESIDUAL_RTOL * reduced.scale_at(found)
        if not np.all(residual <= limit):
            raise RootFindingError(
                f"rootfinder residual {residual.max():.3e} exceeds tolerance",
                partial_roots=found,
            )
        roots.append(found)
    return np.concatenate(roots)


def root_multiplicities(roots, rtol: float = 1e-6) -> List[Tuple[complex, int]]:
    """
    Cluster numerically coincident roots.

    Args:
        roots: Roots as returned by poly_roots
        rtol: Roots within rtol * max(1, |root|) of a cluster centre join it

    Returns:
        List of (cluster mean, multiplicity)
    """
    clusters: List[List[complex]] = []
    for r in np.asarray(roots, dtype=complex):
        for members in clusters:
            centre = np.mean(members)
            if abs(r - centre) <= rtol * max(1.0, abs(centre)):
                members.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(members)), len(members)) for members in clusters]
