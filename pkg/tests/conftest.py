import random

import pytest

from whqram.spectrum import FunctionTable

DATA = __import__("pathlib").Path(__file__).parent / "data"


def random_binary_table(rng: random.Random, n: int, d: int) -> FunctionTable:
    return FunctionTable(n, d, tuple(rng.randrange(1 << d) for _ in range(1 << n)), "binary")


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def worked_example():
    return FunctionTable(2, 2, (1, -2, 0, 1), "real")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
