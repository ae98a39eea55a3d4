import numpy as np
import pytest

from largespin import BathSpec, SpinSize, SystemParams


def random_density_matrix(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fig1a():
    return SystemParams(SpinSize(1), epsilon=1.0), BathSpec(alpha=0.05, omega_c=50.0, temperature=2.0)


@pytest.fixture
def fig1c():
    return SystemParams(SpinSize(1), epsilon=0.0), BathSpec(alpha=0.05, omega_c=50.0, temperature=0.0)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def report(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
