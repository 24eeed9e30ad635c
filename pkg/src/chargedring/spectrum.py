"""Total levels ``E_{p nu n} = E_{p nu} + E_n`` and the separable 3D state
``A J_nu(k rho) e^{i nu phi} Z_n(z)``."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .corral import CorralMode, bessel_j, corral_mode
from .numerov import GridFunction, ShootingProblem, solve_eigenvalue
from .perturbation import perturbed_level, rounded_level
from .potential import RingConfig

Method = Literal["perturbation", "numerov"]

RADIAL_NODES = 128


@dataclass(frozen=True, eq=False)
class CompositeState:
    mode: CorralMode
    n: int
    axial_energy: float
    total_energy: float
    method: str
    axial: Callable
    normalization_A: float

    def axial_value(self, z):
        return self.axial(z)


def _bessel_signed(nu: int, x: float) -> float:
    value = bessel_j(abs(nu), x)
    return -value if nu < 0 and nu % 2 else value


def _radial_norm_sq(mode: CorralMode) -> float:
    # int_0^R J_nu(k rho)^2 rho d rho by Gauss-Legendre
    nodes, weights = np.polynomial.legendre.leggauss(RADIAL_NODES)
    R = mode.radius_R
    rho = 0.5 * R * (nodes + 1.0)
    values = np.array([bessel_j(abs(mode.nu), mode.k * r) for r in rho])
    return 0.5 * R * float(np.sum(weights * values**2 * rho))


def _linear_norm_sq(f: GridFunction) -> float:
    # exact integral of the squared piecewise-linear interpolant
    a, b = f.values[:-1], f.values[1:]
    return f.h * float(np.sum(a * a + a * b + b * b)) / 3.0


def total_level(
    config: RingConfig,
    p: int,
    nu: int,
    n: int,
    method: Method = "numerov",
    reference_protocol: bool = False,
) -> CompositeState:
    """Compose the corral mode ``(p, nu)`` with axial level ``n``.

    ``reference_protocol`` selects the coarse fixed-boundary Numerov setup and the
    rounded-constant perturbative seed; otherwise the matching solver runs on
    an automatically sized domain.
    """
    mode = corral_mode(config, p, nu)
    seed = rounded_level(n, config) if reference_protocol else perturbed_level(n, config)
    if method == "perturbation":
        axial_energy = seed.axial_energy
        axial = lambda z: seed.wavefunction(z, normalize=True)  # noqa: E731
        axial_norm_sq = 1.0
    elif method == "numerov":
        problem = (
            ShootingProblem.reference(config) if reference_protocol else ShootingProblem.for_ring(config)
        )
        solution = solve_eigenvalue(problem, seed)
        axial_energy = solution.energy
        axial = solution.wavefunction
        axial_norm_sq = _linear_norm_sq(solution.wavefunction)
    else:
        raise ValueError(f"unknown method {method!r}")
    norm_sq = 2.0 * math.pi * _radial_norm_sq(mode) * axial_norm_sq
    return CompositeState(
        mode=mode,
        n=n,
        axial_energy=axial_energy,
        total_energy=mode.energy + axial_energy,
        method=method,
        axial=axial,
        normalization_A=1.0 / math.sqrt(norm_sq),
    )


def sample_full_wavefunction(state: CompositeState, rho: float, phi: float, z: float) -> complex:
    """Amplitude of the normalized 3D state at cylindrical point ``(rho, phi, z)``."""
    R = state.mode.radius_R
    if rho < 0 or rho > R:
        raise ValueError(f"rho must lie in [0, R={R}], got {rho!r}")
    if rho == R:
        return 0j
    radial = _bessel_signed(state.mode.nu, state.mode.k * rho)
    axial = float(state.axial(z))
    return state.normalization_A * radial * axial * cmath.exp(1j * state.mode.nu * phi)
