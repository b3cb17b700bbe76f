import numpy as np
import pytest
from hypothesis import settings

from flecnx.enumerator import enumerate_upto

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus4():
    return enumerate_upto(4)


@pytest.fixture(scope="session")
def corpus5():
    return enumerate_upto(5)


def random_perm(n, seed):
    return np.random.default_rng(seed).permutation(n).tolist()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
