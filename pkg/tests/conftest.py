import numpy as np
import pytest

from polymorph import BooleanFunction, make_named, parse_function


@pytest.fixture
def and2():
    return parse_function("n=2 table=8")


@pytest.fixture
def and2_min():
    # 0/1 OR is min in the +-1 view
    return parse_function("n=2 table=e")


@pytest.fixture
def xor2():
    return parse_function("n=2 table=6")


@pytest.fixture
def maj3():
    return make_named("majority", 3)


def random_function(rng: np.random.Generator, n: int) -> BooleanFunction:
    return BooleanFunction(n, rng.integers(0, 2, 1 << n))


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
