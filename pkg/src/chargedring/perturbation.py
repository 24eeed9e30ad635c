"""Rayleigh-Schroedinger corrections for the anharmonic ring well.

The unperturbed problem is the oscillator ``-hbar^2/2m d^2/dz^2 + m omega^2 z^2/2``
and the perturbation is ``W = -Lambda1 z^4 + Lambda2 z^6``. Axial energies are
``E_n = (hbar omega (n + 1/2) + E1 + E2) - V0``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .oscillator import LadderMatrix, build_ladder_matrices, ho_eigenfunction
from .potential import (
    ROUNDED_TWO_M_OVER_HBAR2,
    OscillatorExpansion,
    RingConfig,
    taylor_coefficients,
)

MAX_LEVEL = 10
SUSPICIOUS_RATIO = 0.1


@dataclass(frozen=True)
class PerturbedLevel:
    """Energy pieces (eV) of level ``n`` and its first-order state.

    ``wf_coeffs`` lists ``(k, c_k)`` with ``Z_n = sum_k c_k psi_k^(0)``; the
    coefficient at ``k = n`` is 1 (the state is left unnormalized).
    """

    n: int
    e0: float
    e1: float
    e2: float
    script_e: float
    axial_energy: float
    wf_coeffs: tuple[tuple[int, float], ...]
    expansion: OscillatorExpansion
    suspicious: bool = False

    def wavefunction(self, z, normalize: bool = False):
        """Evaluate the first-order corrected state at ``z`` (nm)."""
        total = sum(c * ho_eigenfunction(k, z, self.expansion) for k, c in self.wf_coeffs)
        if normalize:
            # the psi_k are orthonormal
            total = total / math.sqrt(sum(c * c for _, c in self.wf_coeffs))
        return total


def _diagonal_z4(n: int) -> float:
    return 6.0 * n * n + 6.0 * n + 3.0


def _diagonal_z6(n: int) -> float:
    return 20.0 * n**3 + 30.0 * n * n + 40.0 * n + 15.0


def first_order_energy(n: int, expansion: OscillatorExpansion, sextic: bool = True) -> float:
    """``<n|W|n> = -Lambda1 <n|z^4|n> + Lambda2 <n|z^6|n>`` in eV.

    For the ring couplings this is
    ``-(3/32)(hw)^2/V0 (6n^2+6n+3) + (15/384)(hw)^3/V0^2 (20n^3+30n^2+40n+15)``.
    """
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    b = expansion.length_sq
    e1 = -expansion.lambda1 * b**2 * _diagonal_z4(n)
    if sextic:
        e1 += expansion.lambda2 * b**3 * _diagonal_z6(n)
    return e1


def _coupling(
    k: int, n: int, expansion: OscillatorExpansion, ladder: LadderMatrix, sextic: bool
) -> float:
    w = -expansion.lambda1 * ladder.z4_element(k, n)
    if sextic:
        w += expansion.lambda2 * ladder.z6_element(k, n)
    return w


def _partners(n: int, sextic: bool) -> list[int]:
    shifts = (-6, -4, -2, 2, 4, 6) if sextic else (-4, -2, 2, 4)
    return [n + s for s in shifts if n + s >= 0]


def second_order_energy(
    n: int,
    expansion: OscillatorExpansion,
    ladder: LadderMatrix | None = None,
    sextic: bool = False,
) -> float:
    """``sum_{k != n} |<k|W|n>|^2 / (E_n^(0) - E_k^(0))`` in eV.

    By default only the quartic couplings (k = n +- 2, n +- 4) enter. With
    ``sextic=True`` the z^6 couplings up to k = n +- 6 are included too.
    """
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if ladder is None:
        ladder = build_ladder_matrices(n, expansion)
    if n + (6 if sextic else 4) >= ladder.dim:
        raise ValueError(f"ladder block of size {ladder.dim} too small for level {n}")
    hw = expansion.hbar_omega
    total = 0.0
    for k in _partners(n, sextic):
        w = _coupling(k, n, expansion, ladder, sextic)
        total += w * w / (hw * (n - k))
    return total


def second_order_coefficient(n: int, ladder: LadderMatrix) -> float:
    """Quartic second-order correction of level n in units of (hbar omega)^3/V0^2.

    Equals ``(9/1024) sum_k <k|z^4|n>^2 / (n - k)`` with the matrix elements
    taken in oscillator units.
    """
    total = 0.0
    for k in _partners(n, sextic=False):
        z4 = float(ladder.z4[k, n])
        total += z4 * z4 / (n - k)
    return 9.0 / 1024.0 * total


def first_order_state(
    n: int, expansion: OscillatorExpansion, ladder: LadderMatrix | None = None
) -> tuple[tuple[int, float], ...]:
    """Mixing coefficients of the first-order state, quartic couplings only."""
    if ladder is None:
        ladder = build_ladder_matrices(n, expansion)
    hw = expansion.hbar_omega
    coeffs = [(n, 1.0)]
    for k in _partners(n, sextic=False):
        w = _coupling(k, n, expansion, ladder, sextic=False)
        coeffs.append((k, w / (hw * (n - k))))
    return tuple(sorted(coeffs))


def perturbed_level(
    n: int,
    config: RingConfig,
    sextic_first_order: bool = True,
    sextic_second_order: bool = False,
) -> PerturbedLevel:
    """Axial level ``E_n`` of the ring well to second order.

    ``sextic_first_order=False`` drops the z^6 expectation value from the
    first-order term; see :func:`rounded_level`.
    """
    if n < 0 or n > MAX_LEVEL:
        raise ValueError(f"perturbative levels are supported for 0 <= n <= {MAX_LEVEL}, got {n}")
    expansion = taylor_coefficients(config)
    ladder = build_ladder_matrices(n, expansion)
    e0 = expansion.hbar_omega * (n + 0.5)
    e1 = first_order_energy(n, expansion, sextic=sextic_first_order)
    e2 = second_order_energy(n, expansion, ladder, sextic=sextic_second_order)
    script_e = e0 + e1 + e2
    suspicious = abs(e1 + e2) > SUSPICIOUS_RATIO * e0
    if suspicious:
        warnings.warn(
            f"level {n}: corrections |E1 + E2| = {abs(e1 + e2):.3g} eV exceed "
            f"{SUSPICIOUS_RATIO:g} of the oscillator energy",
            RuntimeWarning,
            stacklevel=2,
        )
    return PerturbedLevel(
        n=n,
        e0=e0,
        e1=e1,
        e2=e2,
        script_e=script_e,
        axial_energy=script_e - expansion.v0,
        wf_coeffs=first_order_state(n, expansion, ladder),
        expansion=expansion,
        suspicious=suspicious,
    )


def rounded_level(n: int, config: RingConfig) -> PerturbedLevel:
    """Level computed the way the reference tables were produced.

    Uses 2m/hbar^2 from hbar*c = 197.3 eV nm and m c^2 = 0.511 MeV, and the
    first-order term from z^4 alone.
    """
    return perturbed_level(
        n, replace(config, two_m_over_hbar2=ROUNDED_TWO_M_OVER_HBAR2), sextic_first_order=False
    )


def corrected_wavefunction(n: int, config: RingConfig, z, normalize: bool = False):
    """First-order corrected axial state ``Z_n(z)`` (nm^-1/2).

    Unnormalized unless ``normalize`` is set.
    """
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    expansion = taylor_coefficients(config)
    coeffs = first_order_state(n, expansion)
    z = np.asarray(z, dtype=float)
    total = sum(c * ho_eigenfunction(k, z, expansion) for k, c in coeffs)
    if normalize:
        total = total / math.sqrt(sum(c * c for _, c in coeffs))
    return float(total) if np.ndim(total) == 0 else total
