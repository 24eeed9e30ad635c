"""Harmonic-oscillator basis: Hermite polynomials, eigenfunctions and the
matrix elements of z^4 and z^6 in the number basis."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .potential import OscillatorExpansion

MAX_HERMITE_ORDER = 60
PADDING = 8


def hermite(n: int, xi):
    """Physicists' Hermite polynomial H_n(xi) via H_{n+1} = 2 xi H_n - 2 n H_{n-1}."""
    if n < 0 or n > MAX_HERMITE_ORDER:
        raise ValueError(f"hermite order must lie in [0, {MAX_HERMITE_ORDER}], got {n}")
    h_prev = np.ones_like(xi, dtype=float) if isinstance(xi, np.ndarray) else 1.0
    if n == 0:
        return h_prev
    h = 2.0 * xi
    for k in range(1, n):
        h_prev, h = h, 2.0 * xi * h - 2.0 * k * h_prev
    return h


@dataclass(frozen=True)
class BasisFunction:
    """Normalized oscillator eigenfunction psi_n^(0); callable on z in nm."""

    n: int
    xi_scale: float

    @property
    def normalization(self) -> float:
        return (self.xi_scale**2 / math.pi) ** 0.25 / math.sqrt(
            2.0**self.n * math.factorial(self.n)
        )

    def __call__(self, z):
        xi = self.xi_scale * np.asarray(z, dtype=float)
        out = self.normalization * hermite(self.n, xi) * np.exp(-0.5 * xi * xi)
        return float(out) if out.ndim == 0 else out


def ho_eigenfunction(n: int, z, expansion: OscillatorExpansion):
    """Normalized oscillator eigenfunction psi_n^(0)(z), in nm^-1/2.

    Accepts scalars or arrays. Evaluated through the three-term recurrence of
    the normalized functions, which avoids the overflow of ``2^n n!`` and
    ``H_n`` at large ``xi``.
    """
    if n < 0 or n > MAX_HERMITE_ORDER:
        raise ValueError(f"oscillator level must lie in [0, {MAX_HERMITE_ORDER}], got {n}")
    s = expansion.xi_scale
    xi = s * np.asarray(z, dtype=float)
    psi_prev = np.zeros_like(xi)
    psi = (s * s / math.pi) ** 0.25 * np.exp(-0.5 * xi * xi)
    for k in range(n):
        psi_prev, psi = psi, (
            math.sqrt(2.0 / (k + 1)) * xi * psi - math.sqrt(k / (k + 1)) * psi_prev
        )
    return float(psi) if psi.ndim == 0 else psi


@dataclass(frozen=True)
class LadderMatrix:
    """``<k|z^4|n>`` and ``<k|z^6|n>`` in units of (hbar/2m omega)^2 and ^3.

    ``length_sq`` is hbar/(2 m omega) in nm^2 for conversion to physical units.
    """

    dim: int
    z4: np.ndarray
    z6: np.ndarray
    length_sq: float

    def z4_element(self, k: int, n: int) -> float:
        """``<k|z^4|n>`` in nm^4; zero outside the stored block."""
        if k < 0 or n < 0 or k >= self.dim or n >= self.dim:
            return 0.0
        return float(self.z4[k, n]) * self.length_sq**2

    def z6_element(self, k: int, n: int) -> float:
        if k < 0 or n < 0 or k >= self.dim or n >= self.dim:
            return 0.0
        return float(self.z6[k, n]) * self.length_sq**3


def position_matrix(dim: int) -> np.ndarray:
    """Matrix of ``a + a^dagger`` in the first ``dim`` number states."""
    off = np.sqrt(np.arange(1, dim, dtype=float))
    return np.diag(off, 1) + np.diag(off, -1)


def build_ladder_matrices(n_max: int, expansion: OscillatorExpansion) -> LadderMatrix:
    """z^4 and z^6 matrices for levels up to ``n_max`` (block size ``n_max + 8``).

    Built as exact powers of the tridiagonal ``a + a^dagger``. The power is
    taken in a basis 3 states larger than the returned block so that every
    returned entry is free of truncation error.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    dim = n_max + PADDING
    x = position_matrix(dim + 3)
    x2 = x @ x
    x4 = x2 @ x2
    x6 = x4 @ x2
    z4 = 0.5 * (x4[:dim, :dim] + x4[:dim, :dim].T)
    z6 = 0.5 * (x6[:dim, :dim] + x6[:dim, :dim].T)
    z4.flags.writeable = False
    z6.flags.writeable = False
    return LadderMatrix(dim=dim, z4=z4, z6=z6, length_sq=expansion.length_sq)
