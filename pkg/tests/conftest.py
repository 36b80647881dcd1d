import numpy as np
import pytest
from hypothesis import settings

from dqd.model import ModelParams, thermal_state

settings.register_profile("dqd", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("dqd")


@pytest.fixture
def gibbs():
    def make(j, delta, t):
        return thermal_state(ModelParams(j, delta, t))

    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
