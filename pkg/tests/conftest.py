import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chargedring import RingConfig  # noqa: E402

# Published reference values for q = +100 e, R = 10 nm.
PERTURBATIVE_LEVELS = [-14.3478480690, -14.2439826462, -14.1410040363, -14.0389321083, -13.9377867309]
SHOOTING_LEVELS = [-14.3478377998, -14.2439376895, -14.1408538542, -14.0383114290, -13.9350535238]
SECOND_ORDER_COEFFS = [-0.369140625, -2.900390625, -10.81054688, -27.68554688, -57.11132813]


@pytest.fixture(scope="session")
def ring() -> RingConfig:
    return RingConfig(charge_q=100.0, radius_R=10.0)


# criterion number -> list of (label, passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[number]
        status = "PASS" if all(ok for _, ok, _ in checks) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}")
        for label, ok, detail in checks:
            terminalreporter.write_line(f"    [{'ok' if ok else 'FAIL'}] {label}: {detail}")
