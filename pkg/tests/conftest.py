import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(rng, dim, max_n=None):
    from photon_replacement.fock import FockVector

    max_n = dim if max_n is None else max_n
    amps = np.zeros(dim, dtype=complex)
    amps[:max_n] = rng.normal(size=max_n) + 1j * rng.normal(size=max_n)
    return FockVector(amps).normalized()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
