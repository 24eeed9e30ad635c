"""Bound states of an electron on the symmetry axis of a charged ring."""

from .corral import CorralMode, bessel_j, bessel_zero, corral_mode
from .errors import BracketError, ConvergenceError, NodeCountError, SolverError
from .numerov import (
    EigenSolution,
    GridFunction,
    ShootingProblem,
    g_function,
    normalize,
    numerov_sweep,
    solve_eigenvalue,
    solve_level,
)
from .oscillator import LadderMatrix, build_ladder_matrices, hermite, ho_eigenfunction
from .perturbation import (
    PerturbedLevel,
    corrected_wavefunction,
    first_order_energy,
    perturbed_level,
    rounded_level,
    second_order_coefficient,
    second_order_energy,
)
from .potential import OscillatorExpansion, RingConfig, ring_potential, taylor_coefficients
from .spectrum import CompositeState, sample_full_wavefunction, total_level

__all__ = [
    "BracketError",
    "CompositeState",
    "ConvergenceError",
    "CorralMode",
    "EigenSolution",
    "GridFunction",
    "LadderMatrix",
    "NodeCountError",
    "OscillatorExpansion",
    "PerturbedLevel",
    "RingConfig",
    "ShootingProblem",
    "SolverError",
    "bessel_j",
    "bessel_zero",
    "build_ladder_matrices",
    "corral_mode",
    "corrected_wavefunction",
    "first_order_energy",
    "g_function",
    "hermite",
    "ho_eigenfunction",
    "normalize",
    "numerov_sweep",
    "perturbed_level",
    "ring_potential",
    "rounded_level",
    "sample_full_wavefunction",
    "second_order_coefficient",
    "second_order_energy",
    "solve_eigenvalue",
    "solve_level",
    "taylor_coefficients",
    "total_level",
]
