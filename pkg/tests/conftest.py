import pytest

from orbicc.fuzz import load_example
from orbicc.orbifold import build_gentle_pair
from orbicc.strings import parse_word


class Pair:
    def __init__(self, name):
        self.t = load_example(name)
        self.g = build_gentle_pair(self.t)

    def word(self, text):
        return parse_word(text)


@pytest.fixture(scope="session")
def ex1():
    return Pair("example1")


@pytest.fixture(scope="session")
def ex2():
    return Pair("example2")


@pytest.fixture(scope="session")
def ex44():
    return Pair("example44")


@pytest.fixture(scope="session")
def pairs(ex1, ex2, ex44):
    return {"example1": ex1, "example2": ex2, "example44": ex44}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
