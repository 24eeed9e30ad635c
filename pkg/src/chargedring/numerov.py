"""Numerov integration of ``Y'' = -g(x) Y`` and a shooting eigensolver.

For the ring well ``g(x) = alpha / sqrt(1 + x^2/R^2) + beta E`` with
``alpha = (2m/hbar^2) V0`` and ``beta = 2m/hbar^2``.

Two shooting modes are available:

* matching mode (``boundary=None``): tails seeded from the local decay
  constant at both ends, forward and backward sweeps matched on the
  log-derivative at the right classical turning point;
* fixed-boundary mode: a forward sweep from two prescribed samples at the
  left edge, with the energy adjusted until the last sample hits a
  prescribed value (sign flipped for odd states).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .errors import BracketError, ConvergenceError, NodeCountError
from .potential import RingConfig

OVERFLOW = 1e250
ENERGY_TOL = 1e-10
MAX_ITER = 200
DEFAULT_WINDOW = 0.05
WINDOW_SLICES = 100
TAIL_DECAY = 1e-10

# Tail samples at x = -3.1 and -3.0 nm taken from the first-order ground state.
REFERENCE_BOUNDARY = (0.001259, 0.001888, 0.001888, 0.001259)
REFERENCE_STEP = 0.1
REFERENCE_HALF_WIDTH = 3.1


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples ``values[k]`` of a real function at ``x0 + k h``."""

    x0: float
    h: float
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 3:
            raise ValueError("a grid function needs at least 3 samples")
        if not self.h > 0:
            raise ValueError(f"grid step must be positive, got {self.h!r}")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.values.size)

    @property
    def x_end(self) -> float:
        return self.x0 + self.h * (self.values.size - 1)

    def norm_sq(self) -> float:
        """Composite-trapezoid integral of the squared samples."""
        v = self.values
        return self.h * (float(np.dot(v, v)) - 0.5 * (v[0] ** 2 + v[-1] ** 2))

    def __call__(self, z):
        """Linear interpolation, zero outside the grid."""
        return np.interp(z, self.x, self.values, left=0.0, right=0.0)


@dataclass(frozen=True)
class ShootingProblem:
    """Axial Schroedinger equation on the uniform grid ``[x0, x_end]``, step ``h``.

    ``boundary`` holds ``(Y_0, Y_1, Y_{N-1}, Y_N)`` for fixed-boundary mode;
    ``None`` selects matching mode. With ``harmonic=True`` the ring potential
    is replaced by its quadratic approximation ``-V0 + V0 x^2 / (2 R^2)``.
    """

    alpha: float
    beta: float
    radius_R: float
    x0: float
    x_end: float
    h: float
    boundary: tuple[float, float, float, float] | None = None
    harmonic: bool = False

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ValueError(f"grid step must be positive, got {self.h!r}")
        if not self.x_end > self.x0:
            raise ValueError("domain must satisfy x0 < x_end")
        steps = (self.x_end - self.x0) / self.h
        if abs(steps - round(steps)) > 1e-6 or round(steps) < 4:
            raise ValueError(
                f"domain [{self.x0}, {self.x_end}] is not a whole number (>= 4) of steps {self.h}"
            )

    @classmethod
    def for_ring(
        cls,
        config: RingConfig,
        h: float = 0.01,
        half_width: float | None = None,
        boundary: tuple[float, float, float, float] | None = None,
        harmonic: bool = False,
        energy_ceiling: float | None = None,
    ) -> ShootingProblem:
        """Symmetric problem ``[-L, L]`` for a ring configuration.

        Without ``half_width``, L is picked so that a state at
        ``energy_ceiling`` (default: 10.5 oscillator quanta above the well
        bottom, capped at 1% of the depth below zero) has decayed by 1e-10 at the edges, rounded up to a whole
        number of steps.
        """
        if half_width is None:
            if energy_ceiling is None:
                hw = math.sqrt(2.0 * config.v0 / (config.two_m_over_hbar2 * config.radius_R**2))
                # shallow wells hold few levels; stay inside the well
                energy_ceiling = min(-config.v0 + 10.5 * hw, -0.01 * config.v0)
            half_width = tail_half_width(config, energy_ceiling, harmonic=harmonic)
            half_width = math.ceil(half_width / h - 1e-9) * h
        return cls(
            alpha=config.alpha,
            beta=config.two_m_over_hbar2,
            radius_R=config.radius_R,
            x0=-half_width,
            x_end=half_width,
            h=h,
            boundary=boundary,
            harmonic=harmonic,
        )

    @classmethod
    def reference(cls, config: RingConfig) -> ShootingProblem:
        """Fixed-boundary setup: h = 0.1 nm on [-3.1, 3.1] nm with tail samples
        0.001259 and 0.001888."""
        return cls.for_ring(
            config,
            h=REFERENCE_STEP,
            half_width=REFERENCE_HALF_WIDTH,
            boundary=REFERENCE_BOUNDARY,
        )

    @property
    def n_steps(self) -> int:
        return int(round((self.x_end - self.x0) / self.h))

    @property
    def v0(self) -> float:
        return self.alpha / self.beta

    def grid(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.n_steps + 1)

    def well(self, x):
        """``alpha`` times the shape of the well, i.e. ``-beta V(x)``."""
        u = (np.asarray(x, dtype=float) / self.radius_R) ** 2
        if self.harmonic:
            return self.alpha * (1.0 - 0.5 * u)
        return self.alpha / np.sqrt(1.0 + u)

    def potential(self, x):
        """Potential energy in eV."""
        return -self.well(x) / self.beta


def g_function(problem: ShootingProblem, x, E: float):
    """``g(x) = alpha / sqrt(1 + x^2/R^2) + beta E`` in nm^-2."""
    if isinstance(x, float) and math.isinf(x):
        return problem.beta * E
    g = problem.well(x) + problem.beta * E
    return float(g) if np.ndim(g) == 0 else g


def tail_half_width(
    config: RingConfig, energy: float, harmonic: bool = False, decay: float = TAIL_DECAY
) -> float:
    """Distance from the centre at which a state of ``energy`` has decayed by ``decay``.

    Integrates the WKB decay constant outward from the classical turning point.
    """
    v0, R, beta = config.v0, config.radius_R, config.two_m_over_hbar2
    if not -v0 < energy < 0:
        raise ValueError(f"bound-state energy must lie in (-V0, 0), got {energy!r}")
    if harmonic:
        x = R * math.sqrt(2.0 * (energy + v0) / v0)
    else:
        x = R * math.sqrt((v0 / energy) ** 2 - 1.0)
    target = math.log(1.0 / decay)
    step = 1e-3 * R
    phase = 0.0
    while phase < target:
        xm = x + 0.5 * step
        v = -v0 * (1.0 - 0.5 * (xm / R) ** 2) if harmonic else -v0 / math.sqrt(1.0 + (xm / R) ** 2)
        phase += math.sqrt(max(beta * (v - energy), 0.0)) * step
        x += step
        if x > 1e4 * R:
            raise ValueError(f"tail of energy {energy} does not decay on a finite domain")
    return x


def _sweep(g: list[float], h: float, y0: float, y1: float, stop: int | None = None) -> list[float]:
    # Standard Numerov with f_k = 1 + h^2 g_k / 12:
    #   f_{k+1} Y_{k+1} = (12 - 10 f_k) Y_k - f_{k-1} Y_{k-1}
    c = h * h / 12.0
    f = [1.0 + c * gk for gk in g]
    last = len(g) - 1 if stop is None else stop
    y = [y0, y1]
    y_prev, y_cur = y0, y1
    for k in range(1, last):
        y_next = ((12.0 - 10.0 * f[k]) * y_cur - f[k - 1] * y_prev) / f[k + 1]
        if abs(y_next) > OVERFLOW:
            y = [v / OVERFLOW for v in y]
            y_cur /= OVERFLOW
            y_next /= OVERFLOW
        y.append(y_next)
        y_prev, y_cur = y_cur, y_next
    return y


def _sweep_nodes(g: list[float], h: float, y0: float, y1: float) -> int:
    # Same recurrence as _sweep, counting sign changes on the fly so that
    # rescaling cannot wipe out interior oscillations.
    c = h * h / 12.0
    f = [1.0 + c * gk for gk in g]
    nodes = 0
    y_prev, y_cur = y0, y1
    sign = math.copysign(1.0, y1) if y1 != 0.0 else math.copysign(1.0, y0)
    for k in range(1, len(g) - 1):
        y_next = ((12.0 - 10.0 * f[k]) * y_cur - f[k - 1] * y_prev) / f[k + 1]
        if abs(y_next) > OVERFLOW:
            y_cur /= OVERFLOW
            y_next /= OVERFLOW
        if y_next != 0.0:
            s = math.copysign(1.0, y_next)
            if s != sign:
                nodes += 1
                sign = s
        y_prev, y_cur = y_cur, y_next
    return nodes


def _tail_seeds(g_edge: float, g_inner: float, h: float) -> tuple[float, float]:
    # decaying tail seen from inside: Y grows by exp(kappa h) moving inward
    kappa = math.sqrt(max(-0.5 * (g_edge + g_inner), 0.0))
    return 1.0, math.exp(kappa * h)


def _seeds(problem: ShootingProblem, g: list[float], direction: str) -> tuple[float, float]:
    if problem.boundary is not None:
        b = problem.boundary
        return (b[0], b[1]) if direction == "forward" else (b[3], b[2])
    if direction == "forward":
        return _tail_seeds(g[0], g[1], problem.h)
    return _tail_seeds(g[-1], g[-2], problem.h)


def numerov_sweep(
    problem: ShootingProblem,
    E: float,
    direction: Literal["forward", "backward"] = "forward",
    seeds: tuple[float, float] | None = None,
) -> GridFunction:
    """Integrate across the whole grid at energy ``E``.

    ``seeds`` are the first two samples in the direction of travel; by default
    they come from ``problem.boundary`` or from the local tail decay.
    Values are rescaled by 1e-250 whenever they exceed 1e250.
    """
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    g = g_function(problem, problem.grid(), E).tolist()
    if direction == "backward":
        g.reverse()
    if seeds is None:
        seeds = _seeds(problem, g if direction == "forward" else g[::-1], direction)
    y = _sweep(g, problem.h, seeds[0], seeds[1])
    if direction == "backward":
        y.reverse()
    return GridFunction(problem.x0, problem.h, np.array(y))


def count_nodes(values) -> int:
    """Sign changes of the sampled function, exact zeros skipped."""
    v = np.asarray(values, dtype=float)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def normalize(f: GridFunction) -> GridFunction:
    """Scale to unit trapezoid norm, sign chosen positive at the right tail."""
    norm_sq = f.norm_sq()
    if not norm_sq > 0 or not math.isfinite(norm_sq):
        raise ValueError("cannot normalize a function with zero norm")
    nonzero = np.flatnonzero(f.values)
    sign = 1.0 if f.values[nonzero[-1]] > 0 else -1.0
    return GridFunction(f.x0, f.h, sign * f.values / math.sqrt(norm_sq), normalized=True)


class EigenSolution(NamedTuple):
    energy: float
    wavefunction: GridFunction
    nodes: int


def solve_eigenvalue(
    problem: ShootingProblem, seed, window: float = DEFAULT_WINDOW
) -> EigenSolution:
    """Refine a perturbative seed (anything with ``n`` and ``axial_energy``)."""
    return solve_level(problem, seed.n, seed.axial_energy, window)


def solve_level(
    problem: ShootingProblem, n: int, guess: float, window: float = DEFAULT_WINDOW
) -> EigenSolution:
    """Eigenvalue with ``n`` nodes near ``guess`` (eV), searched in ``guess +- window``."""
    if n < 0:
        raise ValueError(f"quantum number must be >= 0, got {n}")
    if problem.boundary is not None:
        return _solve_fixed_boundary(problem, n, guess, window)
    return _solve_matching(problem, n, guess, window)


def _bisect(f, lo: float, hi: float, f_lo: float) -> float:
    for _ in range(MAX_ITER):
        if hi - lo <= ENERGY_TOL:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not reach {ENERGY_TOL:g} eV in {MAX_ITER} steps")


def _solve_fixed_boundary(
    problem: ShootingProblem, n: int, guess: float, window: float
) -> EigenSolution:
    parity = -1.0 if n % 2 else 1.0
    target = parity * problem.boundary[3]

    def mismatch(E: float) -> float:
        return numerov_sweep(problem, E).values[-1] - target

    energies = np.linspace(guess - window, guess + window, WINDOW_SLICES + 1)
    values = [mismatch(E) for E in energies]
    roots = []
    for a, b, fa, fb in zip(energies[:-1], energies[1:], values[:-1], values[1:]):
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0.0:
            roots.append(_bisect(mismatch, float(a), float(b), fa))
    if not roots:
        raise BracketError(
            f"level {n}: no sign change of the boundary mismatch in "
            f"[{guess - window:.6f}, {guess + window:.6f}] eV"
        )
    candidates = []
    for E in roots:
        sweep = numerov_sweep(problem, E)
        nodes = count_nodes(sweep.values)
        if nodes == n:
            candidates.append((abs(E - guess), E, sweep))
    if not candidates:
        raise NodeCountError(f"level {n}: no root in the window has {n} nodes")
    _, E, sweep = min(candidates, key=lambda c: c[0])
    return EigenSolution(E, normalize(sweep), n)


def _turning_index(problem: ShootingProblem, E: float) -> int:
    g = g_function(problem, problem.grid(), E)
    n = problem.n_steps
    centre = n // 2
    forbidden = np.flatnonzero(g[centre:] < 0.0)
    m = centre + int(forbidden[0]) if forbidden.size else n - 2
    return min(max(m, 2), n - 2)


def _solve_matching(
    problem: ShootingProblem, n: int, guess: float, window: float
) -> EigenSolution:
    grid = problem.grid()
    h = problem.h
    well = problem.well(grid)

    def g_list(E: float) -> list[float]:
        return (well + problem.beta * E).tolist()

    def nodes_at(E: float) -> int:
        g = g_list(E)
        y0, y1 = _tail_seeds(g[0], g[1], h)
        return _sweep_nodes(g, h, y0, y1)

    # node bracket: exactly one eigenvalue, the n-th, in (lo, hi)
    lo, hi = guess - window, guess + window
    for _ in range(MAX_ITER):
        if nodes_at(lo) <= n:
            break
        lo -= window
    else:
        raise BracketError(f"level {n}: could not find an energy below the state")
    for _ in range(MAX_ITER):
        if nodes_at(hi) > n:
            break
        hi += window
    else:
        raise BracketError(f"level {n}: could not find an energy above the state")

    def narrow(lo: float, hi: float) -> tuple[float, float]:
        mid = 0.5 * (lo + hi)
        return (mid, hi) if nodes_at(mid) <= n else (lo, mid)

    for _ in range(MAX_ITER):
        if nodes_at(lo) == n and nodes_at(hi) == n + 1:
            break
        lo, hi = narrow(lo, hi)
    else:
        raise BracketError(f"level {n}: node counts never isolated a single state")

    m = _turning_index(problem, 0.5 * (lo + hi))

    def halves(E: float) -> tuple[list[float], list[float]]:
        g = g_list(E)
        left = _sweep(g, h, *_tail_seeds(g[0], g[1], h), stop=m + 1)
        gr = g[::-1]
        right = _sweep(gr, h, *_tail_seeds(gr[0], gr[1], h), stop=len(g) - m)
        right.reverse()
        return left, right

    def mismatch(E: float) -> float:
        left, right = halves(E)
        j = m - (len(grid) - len(right))
        d_left = (left[m + 1] - left[m - 1]) / (2.0 * h * left[m])
        d_right = (right[j + 1] - right[j - 1]) / (2.0 * h * right[j])
        return d_left - d_right

    for _ in range(MAX_ITER):
        f_lo, f_hi = mismatch(lo), mismatch(hi)
        if math.isfinite(f_lo) and math.isfinite(f_hi) and f_lo * f_hi <= 0.0:
            break
        if hi - lo <= ENERGY_TOL:
            break
        # a pole of the log-derivative sits in the bracket; shrink it
        lo, hi = narrow(lo, hi)
    else:
        raise ConvergenceError(f"level {n}: matching function never changed sign")

    if hi - lo <= ENERGY_TOL or f_lo == 0.0:
        E = lo if f_lo == 0.0 else 0.5 * (lo + hi)
    else:
        E = _bisect(mismatch, lo, hi, f_lo)

    left, right = halves(E)
    offset = len(grid) - len(right)
    j = m - offset
    values = np.empty(len(grid))
    values[: m + 1] = np.asarray(left[: m + 1]) / left[m]
    values[m:] = np.asarray(right[j:]) / right[j]
    wavefunction = normalize(GridFunction(problem.x0, h, values))
    nodes = count_nodes(wavefunction.values)
    if nodes != n:
        raise NodeCountError(f"level {n}: converged state has {nodes} nodes")
    return EigenSolution(E, wavefunction, nodes)
