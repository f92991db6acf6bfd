"""
Errors - Exception hierarchy shared by samplers, maps, densities and the CLI
"""

from typing import Optional, Sequence

import numpy as np


class RMTError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(RMTError, ValueError):
    """A distribution or model parameter is outside its admissible range."""


class ReducibleMatrixError(RMTError):
    """
    A Jacobi matrix has a zero off-diagonal entry, so e1 is not cyclic.

    Split the matrix with ``JacobiMatrix.blocks()`` or take
    ``JacobiMatrix.leading_block()`` before computing a spectral measure.
    """

    def __init__(self, index: int):
        self.index = index
        super().__init__(
            f"off-diagonal a_{index + 1} is zero; the matrix is reducible. "
            f"Use JacobiMatrix.blocks() or leading_block() to split it."
        )


class DegenerateMeasureError(RMTError):
    """Duplicate atoms, non-positive weights or weights not summing to one."""


class ConvergenceError(RMTError):
    """An iterative numerical method hit its iteration cap."""


class RootFindingError(ConvergenceError):
    """The polynomial rootfinder failed; carries whatever roots it had."""

    def __init__(self, message: str, partial_roots: Optional[Sequence[complex]] = None):
        super().__init__(message)
        self.partial_roots = (
            np.asarray(partial_roots, dtype=complex) if partial_roots is not None else None
        )


class InconsistentSpectrumError(RMTError):
    """A complex spectrum is not the image of any (measure, coupling) pair."""


class SingularJacobianError(RMTError):
    """Two perturbed eigenvalues coincide and the change of variables is singular."""


class UnsupportedEnsembleError(RMTError):
    """Dense constructions exist only for beta in {1, 2}."""


class SpectrumParseError(RMTError, ValueError):
    """Malformed spectrum input; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
