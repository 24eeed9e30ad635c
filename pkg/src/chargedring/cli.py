"""Command-line entry point: ``chargedring {spectrum,wavefunction,corral}``.

Settings come from (highest precedence first) command-line flags, a
``key=value`` config file given with ``--config``, and the defaults below.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .corral import corral_mode
from .errors import SolverError
from .numerov import REFERENCE_BOUNDARY, REFERENCE_HALF_WIDTH, ShootingProblem, solve_level
from .perturbation import perturbed_level, rounded_level
from .potential import RingConfig, taylor_coefficients

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3

METHODS = ("perturbation", "numerov", "both")


@dataclass(frozen=True)
class RunConfig:
    charge_q: float = 100.0
    radius_nm: float = 10.0
    levels: int = 5
    method: str = "both"
    grid_h: float = 0.1
    # None: 3.1 nm under the reference protocol, sized from the tails otherwise
    domain_half_width: float | None = None
    reference_protocol: bool = True
    harmonic_test: bool = False
    output_path: str | None = None

    def validate(self) -> None:
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if not self.grid_h > 0:
            raise ValueError("step must be positive")
        if self.domain_half_width is not None and not self.domain_half_width > 0:
            raise ValueError("half-width must be positive")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {', '.join(METHODS)}")

    def ring(self) -> RingConfig:
        return RingConfig(charge_q=self.charge_q, radius_R=self.radius_nm)


class UsageError(ValueError):
    pass


class LevelFailure(RuntimeError):
    pass


def fmt(value: float) -> str:
    """Fixed 10 significant digits, locale independent."""
    return format(value, ".10g")


_FILE_KEYS = {f.name: f.type for f in fields(RunConfig)}


def read_config_file(path: str | Path) -> dict:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FILE_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, value)
    return values


def _coerce(key: str, value: str):
    kind = _FILE_KEYS[key]
    try:
        if kind == "int":
            return int(value)
        if kind == "bool":
            lowered = value.lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(value)
            return lowered in ("true", "1", "yes")
        if kind == "str":
            return value
        if kind == "str | None":
            return value or None
        return float(value)
    except ValueError:
        raise UsageError(f"bad value for {key}: {value!r}") from None


def _axial_problem(run: RunConfig, ring: RingConfig) -> ShootingProblem:
    if run.reference_protocol and not run.harmonic_test:
        half_width = run.domain_half_width or REFERENCE_HALF_WIDTH
        return ShootingProblem.for_ring(
            ring, h=run.grid_h, half_width=half_width, boundary=REFERENCE_BOUNDARY
        )
    return ShootingProblem.for_ring(
        ring, h=run.grid_h, half_width=run.domain_half_width, harmonic=run.harmonic_test
    )


def _perturbative_energy(run: RunConfig, ring: RingConfig, n: int) -> float:
    if run.harmonic_test:
        expansion = taylor_coefficients(ring)
        return expansion.hbar_omega * (n + 0.5) - ring.v0
    if run.reference_protocol:
        return rounded_level(n, ring).axial_energy
    return perturbed_level(n, ring).axial_energy


def _numerov_solution(run: RunConfig, ring: RingConfig, problem: ShootingProblem, n: int):
    guess = _perturbative_energy(run, ring, n)
    try:
        return solve_level(problem, n, guess)
    except SolverError as exc:
        raise LevelFailure(f"level {n}: {exc}") from exc


def cmd_spectrum(run: RunConfig, stdout) -> int:
    ring = run.ring()
    want_pert = run.method in ("perturbation", "both")
    want_num = run.method in ("numerov", "both")
    problem = _axial_problem(run, ring) if want_num else None
    rows = []
    for n in range(run.levels):
        row = {"n": str(n)}
        e_pert = _perturbative_energy(run, ring, n) if want_pert else None
        e_num = _numerov_solution(run, ring, problem, n).energy if want_num else None
        if want_pert:
            row["E_perturbation_eV"] = fmt(e_pert)
        if want_num:
            row["E_numerov_eV"] = fmt(e_num)
        if want_pert and want_num:
            row["difference_eV"] = fmt(e_num - e_pert)
        rows.append(row)
    header = list(rows[0])
    widths = [max(len(h), *(len(r[h]) for r in rows)) for h in header]
    stdout.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
    for r in rows:
        stdout.write("  ".join(r[h].rjust(w) for h, w in zip(header, widths)) + "\n")
    if run.output_path:
        with open(run.output_path, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, header, [[r[h] for h in header] for r in rows])
    return EXIT_OK


def _write_csv(fh, header, rows) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def cmd_wavefunction(run: RunConfig, n: int, stdout) -> int:
    if not 0 <= n < run.levels:
        raise UsageError(f"level {n} out of range for --levels {run.levels}")
    ring = run.ring()
    problem = _axial_problem(run, ring)
    if run.method == "perturbation":
        if run.harmonic_test:
            raise UsageError("the harmonic test has no perturbative wavefunction")
        level = rounded_level(n, ring) if run.reference_protocol else perturbed_level(n, ring)
        z = problem.grid()
        values = level.wavefunction(z, normalize=True)
    else:
        solution = _numerov_solution(run, ring, problem, n)
        z, values = solution.wavefunction.x, solution.wavefunction.values
    rows = [[fmt(zi), fmt(vi)] for zi, vi in zip(z, np.asarray(values))]
    if run.output_path:
        with open(run.output_path, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, ["z_nm", "Z"], rows)
    else:
        _write_csv(stdout, ["z_nm", "Z"], rows)
    return EXIT_OK


def cmd_corral(run: RunConfig, nu: int, count: int, stdout) -> int:
    if count < 1:
        raise UsageError("count must be >= 1")
    ring = run.ring()
    header = ["p", "zero", "k_per_nm", "E_eV", "2mER^2/hbar^2"]
    rows = []
    for p in range(1, count + 1):
        try:
            mode = corral_mode(ring, p, nu)
        except SolverError as exc:
            raise LevelFailure(f"corral mode p={p}, nu={nu}: {exc}") from exc
        rows.append([str(p), fmt(mode.zero), fmt(mode.k), fmt(mode.energy), fmt(mode.reduced_energy)])
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    stdout.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
    for r in rows:
        stdout.write("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n")
    if run.output_path:
        with open(run.output_path, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, header, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file (keys: charge_q, radius_nm, ...)")
    common.add_argument("--charge", dest="charge_q", type=float, help="ring charge in units of e (100)")
    common.add_argument("--radius", dest="radius_nm", type=float, help="ring radius in nm (10)")
    common.add_argument("--levels", type=int, help="number of axial levels (5)")
    common.add_argument("--method", choices=METHODS, help="axial solver (both)")
    common.add_argument("--step", dest="grid_h", type=float, help="Numerov step in nm (0.1)")
    common.add_argument(
        "--half-width",
        dest="domain_half_width",
        type=float,
        help="half width of the axial domain in nm (3.1 with the reference protocol, "
        "automatic otherwise)",
    )
    common.add_argument(
        "--reference-protocol",
        "--paper-protocol",
        dest="reference_protocol",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="fixed-boundary Numerov on [-3.1, 3.1] and rounded-constant "
        "perturbative levels (default: on)",
    )
    common.add_argument(
        "--harmonic-test",
        dest="harmonic_test",
        action="store_true",
        default=None,
        help="replace the ring well by its quadratic approximation",
    )
    common.add_argument("--out", dest="output_path", help="CSV output path")

    parser = argparse.ArgumentParser(
        prog="chargedring",
        description="Levels of an electron on the axis of a charged ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="axial energy table")
    wf = sub.add_parser("wavefunction", parents=[common], help="axial eigenfunction as CSV")
    wf.add_argument("--n", type=int, default=0, help="axial quantum number (0)")
    corral = sub.add_parser("corral", parents=[common], help="corral (Bessel-zero) modes")
    corral.add_argument("--nu", type=int, default=0, help="angular momentum quantum number (0)")
    corral.add_argument("--count", type=int, default=4, help="number of zeros (4)")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    run = RunConfig()
    if args.config:
        try:
            run = replace(run, **read_config_file(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from exc
    overrides = {
        f.name: getattr(args, f.name)
        for f in fields(RunConfig)
        if getattr(args, f.name, None) is not None
    }
    run = replace(run, **overrides)
    run.validate()
    return run


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        run = resolve_config(args)
        run.ring()
        if args.command == "spectrum":
            return cmd_spectrum(run, stdout)
        if args.command == "wavefunction":
            return cmd_wavefunction(run, args.n, stdout)
        return cmd_corral(run, args.nu, args.count, stdout)
    except LevelFailure as exc:
        stderr.write(f"chargedring: solver failure: {exc}\n")
        return EXIT_SOLVER
    except ValueError as exc:
        stderr.write(f"chargedring: {exc}\n")
        return EXIT_USAGE

