"""Bessel functions of the first kind and hard-wall circular (corral) modes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError
from .potential import RingConfig

MAX_ORDER = 50
SERIES_LIMIT = 12.0
SCAN_STEP = 0.5
ZERO_WIDTH = 1e-12
ZERO_RESIDUAL = 1e-10
MAX_SCAN_STEPS = 10_000


def _check_order(nu: int) -> int:
    if int(nu) != nu:
        raise ValueError(f"Bessel order must be an integer, got {nu!r}")
    nu = int(nu)
    if nu < 0 or nu > MAX_ORDER:
        raise ValueError(f"Bessel order must lie in [0, {MAX_ORDER}], got {nu}")
    return nu


def _series(nu: int, x: float) -> float:
    half = 0.5 * x
    q = half * half
    term = half**nu / math.factorial(nu)
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= -q / (k * (k + nu))
        terms.append(term)
        if k > half and abs(term) < 1e-18:
            break
    return math.fsum(terms)


def _miller(nu: int, x: float) -> float:
    # Downward recurrence from well above max(nu, x), normalized by
    # J_0 + 2 * sum_k J_2k = 1.
    top = max(nu, int(x))
    start = 2 * ((top + 20 + int(math.sqrt(40.0 * top))) // 2)
    j_next, j_cur = 0.0, 1e-30
    norm = 0.0
    result = 0.0
    for k in range(start, 0, -1):
        j_prev = 2.0 * k / x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > 1e200:
            j_next *= 1e-200
            j_cur *= 1e-200
            result *= 1e-200
            norm *= 1e-200
        if k - 1 == nu:
            result = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur  # J_0
    return result / norm


def bessel_j(nu: int, x: float) -> float:
    """First-kind Bessel function J_nu(x) for integer ``0 <= nu <= 50`` and ``x >= 0``.

    Uses the ascending power series for ``x <= 12`` and Miller's normalized
    downward recurrence beyond.
    """
    nu = _check_order(nu)
    if not math.isfinite(x) or x < 0:
        raise ValueError(f"bessel_j needs finite x >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x <= SERIES_LIMIT:
        return _series(nu, x)
    return _miller(nu, x)


def bessel_zero(nu: int, p: int) -> float:
    """p-th positive zero ``j_{nu,p}`` of J_nu.

    Sign changes are located by scanning in steps of 0.5 from ``max(nu, 1)``
    (successive zeros are always more than 0.5 apart, so none is skipped),
    then bisected to an interval width of 1e-12.
    """
    nu = _check_order(nu)
    if int(p) != p or p < 1:
        raise ValueError(f"zero index p must be a positive integer, got {p!r}")
    a = float(max(nu, 1))
    fa = bessel_j(nu, a)
    found = 0
    for _ in range(MAX_SCAN_STEPS):
        b = a + SCAN_STEP
        fb = bessel_j(nu, b)
        if fa == 0.0:
            found += 1
            if found == p:
                return a
        elif fa * fb < 0.0:
            found += 1
            if found == p:
                return _bisect(nu, a, b, fa)
        a, fa = b, fb
    raise ConvergenceError(f"zero #{p} of J_{nu} not found within the scan budget")


def _bisect(nu: int, a: float, b: float, fa: float) -> float:
    for _ in range(200):
        if b - a <= ZERO_WIDTH:
            break
        m = 0.5 * (a + b)
        fm = bessel_j(nu, m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b = m
        else:
            a, fa = m, fm
    root = 0.5 * (a + b)
    residual = abs(bessel_j(nu, root))
    if residual >= ZERO_RESIDUAL:
        raise ConvergenceError(
            f"zero of J_{nu} near {root:.12g} has residual {residual:.3g}"
        )
    return root


@dataclass(frozen=True)
class CorralMode:
    """Transverse mode of the hard-wall disc: wavenumber k (nm^-1), energy (eV)."""

    p: int
    nu: int
    k: float
    energy: float
    radius_R: float

    @property
    def zero(self) -> float:
        return self.k * self.radius_R

    @property
    def reduced_energy(self) -> float:
        """Dimensionless ``2 m E R^2 / hbar^2``, i.e. ``(k R)^2``."""
        return self.zero**2


def corral_mode(config: RingConfig, p: int, nu: int) -> CorralMode:
    """Mode ``(p, nu)`` of the corral of radius ``config.radius_R``.

    Energies depend on ``|nu|`` only.
    """
    zero = bessel_zero(abs(nu), p)
    k = zero / config.radius_R
    return CorralMode(
        p=int(p),
        nu=int(nu),
        k=k,
        energy=config.hbar2_over_2m * k * k,
        radius_R=config.radius_R,
    )
