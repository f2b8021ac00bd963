import numpy as np
import pytest

from fermichain.model import CouplingLaw, ModelSpec, SymmetryClass


def random_law(rng, radius=3, pairing=True):
    a = {j: rng.uniform(-1, 1) for j in range(radius + 1)}
    b = {j: rng.uniform(-1, 1) for j in range(1, radius + 1)} if pairing else {}
    return CouplingLaw.from_halves(a, b)


def random_spec(rng, M=8, gamma=0.0, cls=SymmetryClass.UNITARY, radius=3):
    radius = min(radius, (M - 1) // 2)  # keep M > 2 * radius
    return ModelSpec(rng.uniform(0.5, 2.0), gamma, random_law(rng, radius, gamma != 0), cls, M)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
