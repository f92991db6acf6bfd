"""
Jacobi Types - Array containers for Jacobi matrices, bidiagonal factors,
discrete spectral measures and dense Hermitian matrices
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from errors import DegenerateMeasureError, ParameterError

WEIGHT_SUM_TOL = 1e-12
ATOM_SEPARATION = 1e-10


@dataclass
class JacobiMatrix:
    """
    Real symmetric tridiagonal matrix with diagonal b_1..b_n and
    non-negative off-diagonal a_1..a_{n-1}.
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        self.diag = np.atleast_1d(np.asarray(self.diag, dtype=float)).copy()
        self.offdiag = np.atleast_1d(np.asarray(self.offdiag, dtype=float)).copy()
        if self.diag.ndim != 1 or self.diag.size == 0:
            raise ParameterError("diag must be a non-empty vector")
        if self.offdiag.size != self.diag.size - 1:
            raise ParameterError(
                f"offdiag must have {self.diag.size - 1} entries, got {self.offdiag.size}"
            )
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.offdiag))):
            raise ParameterError("Jacobi coefficients must be finite")
        if np.any(self.offdiag < 0):
            raise ParameterError("off-diagonal entries must be non-negative")

    @property
    def n(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def norm(self) -> float:
        """Maximum absolute row sum; bounds the spectral radius."""
        rows = np.abs(self.diag).copy()
        rows[:-1] += self.offdiag
        rows[1:] += self.offdiag
        return float(rows.max())

    def blocks(self) -> List["JacobiMatrix"]:
        """Split at zero off-diagonals into irreducible diagonal blocks."""
        cuts = [0] + [i + 1 for i in np.flatnonzero(self.offdiag == 0.0)] + [self.n]
        return [
            JacobiMatrix(self.diag[lo:hi], self.offdiag[lo:hi - 1])
            for lo, hi in zip(cuts[:-1], cuts[1:])
        ]

    def leading_block(self) -> "JacobiMatrix":
        """The block containing e1; it carries the whole spectral measure."""
        return self.blocks()[0]

    def to_dict(self) -> Dict[str, Any]:
        return {"diag": self.diag.tolist(), "offdiag": self.offdiag.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "JacobiMatrix":
        return cls(np.asarray(data["diag"], dtype=float), np.asarray(data.get("offdiag", []), dtype=float))

    @classmethod
    def from_dense(cls, matrix: np.ndarray) -> "JacobiMatrix":
        m = np.asarray(matrix)
        return cls(np.real(np.diag(m)), np.abs(np.diag(m, -1)))


@dataclass
class Bidiagonal:
    """Upper bidiagonal B with main x_1..x_n and superdiagonal y_1..y_{n-1}."""

    main: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.main = np.atleast_1d(np.asarray(self.main, dtype=float)).copy()
        self.upper = np.atleast_1d(np.asarray(self.upper, dtype=float)).copy()
        if self.upper.size != self.main.size - 1:
            raise ParameterError(
                f"upper must have {self.main.size - 1} entries, got {self.upper.size}"
            )
        if np.any(self.main < 0) or np.any(self.upper < 0):
            raise ParameterError("bidiagonal entries must be non-negative")

    @property
    def n(self) -> int:
        return self.main.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.main) + np.diag(self.upper, 1)

    def to_dict(self) -> Dict[str, Any]:
        return {"main": self.main.tolist(), "upper": self.upper.tolist()}


@dataclass
class SpectralMeasure:
    """
    Discrete probability measure sum_j w_j delta_{lambda_j}.

    Atoms are kept sorted by lambda, descending. Weights must be positive,
    sum to one and sit on pairwise distinct points.
    """

    lambdas: np.ndarray
    weights: np.ndarray
    sum_tol: float = field(default=WEIGHT_SUM_TOL, repr=False)

    def __post_init__(self):
        lam = np.atleast_1d(np.asarray(self.lambdas, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if lam.size == 0 or lam.shape != w.shape:
            raise DegenerateMeasureError("atoms and weights must be non-empty and of equal length")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(w))):
            raise DegenerateMeasureError("atoms and weights must be finite")
        if np.any(w <= 0):
            raise DegenerateMeasureError(f"weights must be positive, got min {w.min():.3e}")
        if abs(w.sum() - 1.0) > self.sum_tol:
            raise DegenerateMeasureError(f"weights sum to {w.sum():.15f}, not 1")
        order = np.argsort(-lam, kind="stable")
        lam, w = lam[order], w[order]
        if lam.size > 1:
            diameter = lam[0] - lam[-1]
            gaps = lam[:-1] - lam[1:]
            if np.any(gaps <= ATOM_SEPARATION * diameter):
                raise DegenerateMeasureError("atoms are not pairwise distinct")
        self.lambdas = lam
        self.weights = w

    @property
    def n(self) -> int:
        return self.lambdas.size

    @property
    def atoms(self) -> List[Tuple[float, float]]:
        return list(zip(self.lambdas.tolist(), self.weights.tolist()))

    @property
    def diameter(self) -> float:
        return float(self.lambdas[0] - self.lambdas[-1])

    def moments(self, count: int) -> np.ndarray:
        """int x^k dmu for k = 0..count-1."""
        powers = self.lambdas[None, :] ** np.arange(count)[:, None]
        return powers @ self.weights

    def zero_atom(self, tol: float = 1e-8) -> Optional[int]:
        """Index of the atom of smallest |lambda| if it lies within tol*max(1, diameter) of 0."""
        index = int(np.argmin(np.abs(self.lambdas)))
        if abs(self.lambdas[index]) <= tol * max(1.0, self.diameter):
            return index
        return None

    def snap_zero_atom(self, tol: float = 1e-8) -> "SpectralMeasure":
        """Copy with the near-zero atom set to exactly 0."""
        index = self.zero_atom(tol)
        if index is None:
            raise DegenerateMeasureError("measure has no atom at zero")
        lam = self.lambdas.copy()
        lam[index] = 0.0
        return SpectralMeasure(lam, self.weights.copy(), self.sum_tol)

    def to_dict(self) -> Dict[str, Any]:
        return {"atoms": [[lam, w] for lam, w in self.atoms]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpectralMeasure":
        atoms = np.asarray(data["atoms"], dtype=float).reshape(-1, 2)
        return cls(atoms[:, 0], atoms[:, 1])


@dataclass
class DenseHermitian:
    """Dense Hermitian matrix tagged with beta = 1 (real) or 2 (complex)."""

    matrix: np.ndarray
    beta: int

    def __post_init__(self):
        if self.beta not in (1, 2):
            raise ParameterError(f"dense matrices carry beta 1 or 2, got {self.beta}")
        dtype = float if self.beta == 1 else complex
        self.matrix = np.asarray(self.matrix, dtype=dtype)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ParameterError("dense matrix must be square")
        scale = max(1.0, float(np.abs(self.matrix).max(initial=0.0)))
        if np.abs(self.matrix - self.matrix.conj().T).max(initial=0.0) > 1e-12 * scale:
            raise ParameterError("matrix is not Hermitian")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]
