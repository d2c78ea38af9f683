import numpy as np
import pytest

from quantres.core import SystemSpec, is_controllable


def random_system(rng, n=None, extra=None, u_max=None):
    """Random controllable plant with n <= 4 states and 1..3 spare inputs."""
    n = n if n is not None else int(rng.integers(1, 5))
    extra = extra if extra is not None else int(rng.integers(1, 4))
    while True:
        sys = SystemSpec(rng.uniform(-1, 1, size=(n, n + extra)),
                         u_max if u_max is not None else float(rng.uniform(0.5, 2.0)))
        if is_controllable(sys) and np.linalg.svd(sys.b_bar, compute_uv=False)[-1] > 0.05:
            return sys


def random_direction(rng, n):
    d = rng.standard_normal(n)
    return d / np.linalg.norm(d)


@pytest.fixture
def micro():
    """B = I2 kept, C = (0.5, 0) lost, u_max = 1."""
    return SystemSpec(np.array([[1.0, 0.0, 0.5], [0.0, 1.0, 0.0]]), 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20211)


ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
