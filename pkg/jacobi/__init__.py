"""
Jacobi Module - Jacobi matrices, spectral measures and tridiagonalization
"""

from .types import JacobiMatrix, Bidiagonal, SpectralMeasure, DenseHermitian
from .spectral import tridiagonal_eigen, spectral_measure, reconstruct_jacobi, lanczos
from .tridiagonal import bidiag_square, tridiagonalize, char_poly_coeffs

__all__ = [
    "JacobiMatrix",
    "Bidiagonal",
    "SpectralMeasure",
    "DenseHermitian",
    "tridiagonal_eigen",
    "spectral_measure",
    "reconstruct_jacobi",
    "lanczos",
    "bidiag_square",
    "tridiagonalize",
    "char_poly_coeffs",
]
