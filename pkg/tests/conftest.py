import numpy as np
import pytest

from tetradgauge.constraint_immersion import random_tetrad
from tetradgauge.frame_geometry import FieldJet, spin_connection, spin_connection_derivative

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_admissible_jet(rng, scale=0.5):
    """Jet of a random smooth tetrad: random e, de (and symmetric dde), with its own connection."""
    e = random_tetrad(rng)
    while np.linalg.cond(e) > 30:
        e = random_tetrad(rng)
    de = rng.uniform(-scale, scale, size=(4, 4, 4))
    dde = rng.uniform(-scale, scale, size=(4, 4, 4, 4))
    dde = 0.5 * (dde + dde.transpose(0, 1, 3, 2))
    x = rng.uniform(-1, 1, size=4)
    return FieldJet(x, e, de, spin_connection(e, de), spin_connection_derivative(e, de, dde))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
