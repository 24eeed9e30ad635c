import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from chargedring import SolverError, cli
from conftest import PERTURBATIVE_LEVELS, SHOOTING_LEVELS


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def table(text):
    lines = text.strip().splitlines()
    header = lines[0].split()
    return [dict(zip(header, line.split())) for line in lines[1:]]


def test_default_spectrum_reproduces_tables():
    code, out, _ = run("spectrum")
    assert code == 0
    rows = table(out)
    assert [r["n"] for r in rows] == ["0", "1", "2", "3", "4"]
    for r, t1, t2 in zip(rows, PERTURBATIVE_LEVELS, SHOOTING_LEVELS):
        assert float(r["E_perturbation_eV"]) == pytest.approx(t1, abs=1e-7)
        assert float(r["E_numerov_eV"]) == pytest.approx(t2, abs=5e-6)
        assert float(r["difference_eV"]) == pytest.approx(
            float(r["E_numerov_eV"]) - float(r["E_perturbation_eV"]), abs=2e-8
        )


def test_single_method_columns():
    code, out, _ = run("spectrum", "--method", "perturbation", "--levels", "2")
    assert code == 0
    assert list(table(out)[0]) == ["n", "E_perturbation_eV"]


def test_harmonic_test():
    code, out, _ = run(
        "spectrum", "--harmonic-test", "--method", "numerov", "--step", "0.01", "--levels", "1"
    )
    assert code == 0
    # the oscillator ground state -V0 + hbar omega / 2
    assert float(table(out)[0]["E_numerov_eV"]) == pytest.approx(-14.34762461, abs=1e-6)


def test_general_protocol():
    code, out, _ = run("spectrum", "--no-reference-protocol", "--step", "0.01", "--levels", "3")
    assert code == 0
    for r in table(out):
        assert abs(float(r["difference_eV"])) < 2e-3


def _wavefunction(*extra):
    code, out, _ = run("wavefunction", *extra)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["z_nm", "Z"]
    data = np.array(rows[1:], dtype=float)
    return data[:, 0], data[:, 1]


def test_wavefunction_parity():
    z, even = _wavefunction("--n", "0")
    _, odd = _wavefunction("--n", "1")
    assert z[0] == pytest.approx(-3.1) and z[-1] == pytest.approx(3.1)
    # the forward-only reference sweep meets its far boundary to ~1e-4
    np.testing.assert_allclose(even, even[::-1], atol=1e-4 * np.max(even))
    np.testing.assert_allclose(odd, -odd[::-1], atol=1e-4 * np.max(odd))
    assert odd[np.argmin(np.abs(z))] == pytest.approx(0.0, abs=1e-6)


def test_wavefunction_methods_agree():
    _, numerov = _wavefunction("--n", "0")
    _, pert = _wavefunction("--n", "0", "--method", "perturbation")
    assert np.max(np.abs(numerov - pert)) / np.max(numerov) < 0.02


def test_wavefunction_level_range():
    code, _, err = run("wavefunction", "--n", "5")
    assert code == 2 and "out of range" in err


def test_corral_output():
    code, out, _ = run("corral", "--count", "4")
    assert code == 0
    rows = table(out)
    zeros = [float(r["zero"]) for r in rows]
    assert zeros == pytest.approx([2.40483, 5.52008, 8.65373, 11.79153], abs=1e-5)
    assert float(rows[0]["E_eV"]) == pytest.approx(0.0022033843, abs=1e-8)


def test_csv_round_trip(tmp_path):
    path = tmp_path / "levels.csv"
    code, out, _ = run("spectrum", "--out", str(path))
    assert code == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode())))
    printed = table(out)
    for a, b in zip(rows, printed):
        for key in a:
            assert float(a[key]) == pytest.approx(float(b[key]), abs=1e-9)


def test_deterministic():
    assert run("spectrum") == run("spectrum")


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "ring.cfg"
    cfg.write_text("# shallow\ncharge_q = 50\nradius_nm=10\nlevels = 2\nmethod=perturbation\n")
    _, from_file, _ = run("spectrum", "--config", str(cfg))
    _, from_flags, _ = run("spectrum", "--charge", "50", "--levels", "2", "--method", "perturbation")
    assert from_file == from_flags
    _, overridden, _ = run("spectrum", "--config", str(cfg), "--levels", "3")
    assert len(table(overridden)) == 3


@pytest.mark.parametrize(
    "content", ["charge_q 50\n", "colour = red\n", "levels = many\n", "reference_protocol = maybe\n"]
)
def test_bad_config_file(tmp_path, content):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(content)
    code, _, err = run("spectrum", "--config", str(cfg))
    assert code == 2 and err


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--charge", "-100"],
        ["spectrum", "--radius", "0"],
        ["spectrum", "--levels", "0"],
        ["spectrum", "--step", "-0.1"],
        ["spectrum", "--method", "magic"],
        ["spectrum", "--config", "/nonexistent/file.cfg"],
        ["corral", "--count", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_solver_failure_exit_code(monkeypatch):
    def fail(*args, **kwargs):
        raise SolverError("no bracket")

    monkeypatch.setattr(cli, "solve_level", fail)
    code, _, err = run("spectrum")
    assert code == 3 and "no bracket" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "chargedring", "corral", "--count", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "2.404825558" in proc.stdout


def test_protocol_flag_alias():
    assert run("spectrum", "--levels", "2", "--paper-protocol") == run(
        "spectrum", "--levels", "2", "--reference-protocol"
    )
    assert run("spectrum", "--levels", "2", "--no-paper-protocol") == run(
        "spectrum", "--levels", "2", "--no-reference-protocol"
    )
