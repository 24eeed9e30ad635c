"""Axial potential energy of an electron on the symmetry axis of a charged ring.

Units are eV and nm throughout. The electron mass enters only through the
constant ``2m/hbar^2`` (eV^-1 nm^-2), and the Coulomb coupling through
``e^2/(4 pi eps0)`` (eV nm).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

# 2m_e/hbar^2 in eV^-1 nm^-2.
ELECTRON_TWO_M_OVER_HBAR2 = 26.2468963087034

# Same constant built from the rounded values hbar*c = 197.3 eV nm and
# m_e c^2 = 0.511 MeV. The tabulated perturbative levels use these.
ROUNDED_TWO_M_OVER_HBAR2 = 2.0 * 0.511e6 / 197.3**2

# e^2/(4 pi eps0) in eV nm.
COULOMB_CONST = 1.44


@dataclass(frozen=True)
class RingConfig:
    """Ring of charge ``charge_q`` (in units of e) and radius ``radius_R`` (nm).

    The confined particle is an electron (charge -e). Only the attractive
    configuration ``charge_q > 0`` is supported.
    """

    charge_q: float = 100.0
    radius_R: float = 10.0
    two_m_over_hbar2: float = ELECTRON_TWO_M_OVER_HBAR2
    coulomb_const: float = COULOMB_CONST
    v0: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("charge_q", "radius_R", "two_m_over_hbar2", "coulomb_const"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.radius_R <= 0:
            raise ValueError(f"radius_R must be positive, got {self.radius_R!r}")
        if self.charge_q <= 0:
            raise ValueError(
                "only an attractive ring (charge_q > 0) is supported, "
                f"got charge_q={self.charge_q!r}"
            )
        if self.two_m_over_hbar2 <= 0 or self.coulomb_const <= 0:
            raise ValueError("physical constants must be positive")
        object.__setattr__(
            self, "v0", self.coulomb_const * self.charge_q / self.radius_R
        )

    @property
    def hbar2_over_2m(self) -> float:
        return 1.0 / self.two_m_over_hbar2

    @property
    def alpha(self) -> float:
        """``(2m/hbar^2) V0`` in nm^-2."""
        return self.two_m_over_hbar2 * self.v0


@dataclass(frozen=True)
class OscillatorExpansion:
    """Harmonic approximation of the well plus its quartic and sextic terms.

    ``omega_sq`` is stored as ``V0/(m R^2)`` in eV^2/hbar^2, i.e. it equals
    ``hbar_omega**2`` numerically. ``xi_scale`` is ``sqrt(m omega/hbar)`` so
    that the dimensionless oscillator coordinate is ``xi = xi_scale * z``.
    """

    v0: float
    omega_sq: float
    hbar_omega: float
    lambda1: float
    lambda2: float
    xi_scale: float

    @property
    def length_sq(self) -> float:
        """``hbar/(2 m omega)`` in nm^2, the unit of ``<k|z^2|n>``."""
        return 0.5 / self.xi_scale**2

    def scaled(self, s: float, sextic: bool = True) -> OscillatorExpansion:
        """Copy with the anharmonic couplings multiplied by ``s``.

        With ``sextic=False`` the z^6 coupling is switched off entirely.
        """
        return OscillatorExpansion(
            v0=self.v0,
            omega_sq=self.omega_sq,
            hbar_omega=self.hbar_omega,
            lambda1=s * self.lambda1,
            lambda2=s * self.lambda2 if sextic else 0.0,
            xi_scale=self.xi_scale,
        )


def ring_potential(config: RingConfig, z: float) -> float:
    """Potential energy ``-V0 / sqrt(1 + z^2/R^2)`` in eV at axial position ``z``."""
    if math.isinf(z):
        return -0.0
    return -config.v0 / math.sqrt(1.0 + (z / config.radius_R) ** 2)


def taylor_series(config: RingConfig, z: float, order: int = 6) -> float:
    """Even Taylor polynomial of the ring potential about z = 0, up to ``z**order``."""
    coeffs = (1.0, -1.0 / 2.0, 3.0 / 8.0, -15.0 / 48.0)
    u = (z / config.radius_R) ** 2
    total = 0.0
    for k, c in enumerate(coeffs):
        if 2 * k > order:
            break
        total += c * u**k
    return -config.v0 * total


def taylor_coefficients(config: RingConfig) -> OscillatorExpansion:
    """Harmonic frequency and anharmonic couplings of the ring well.

    Matches ``V(z) = -V0 + (1/2) m omega^2 z^2 - Lambda1 z^4 + Lambda2 z^6 + ...``
    with ``m omega^2 = V0/R^2``, ``Lambda1 = 3 V0/(8 R^4)`` and
    ``Lambda2 = 15 V0/(48 R^6)``.
    """
    v0 = config.v0
    R = config.radius_R
    # (hbar omega)^2 = (hbar^2/m) V0 / R^2
    omega_sq = 2.0 * config.hbar2_over_2m * v0 / R**2
    hbar_omega = math.sqrt(omega_sq)
    # m omega / hbar = hbar omega / (hbar^2/m)
    xi_scale = math.sqrt(hbar_omega * config.two_m_over_hbar2 / 2.0)
    if hbar_omega >= v0:
        warnings.warn(
            f"hbar*omega={hbar_omega:.4g} eV is not small compared to V0={v0:.4g} eV; "
            "perturbative results are unreliable",
            RuntimeWarning,
            stacklevel=2,
        )
    return OscillatorExpansion(
        v0=v0,
        omega_sq=omega_sq,
        hbar_omega=hbar_omega,
        lambda1=3.0 * v0 / (8.0 * R**4),
        lambda2=15.0 * v0 / (48.0 * R**6),
        xi_scale=xi_scale,
    )
