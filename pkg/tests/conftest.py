import pytest

from dayfour.enumeration import enumerate_day
from dayfour.games import GameArena
from dayfour.poset import chain_division, stratify


@pytest.fixture(scope="session")
def arena():
    return GameArena()


@pytest.fixture(scope="session")
def day2(arena):
    return enumerate_day(2, arena)


@pytest.fixture(scope="session")
def day3(arena):
    return enumerate_day(3, arena)


@pytest.fixture(scope="session")
def strat2(day2):
    return stratify(day2)


@pytest.fixture(scope="session")
def strat3(day3):
    return stratify(day3)


@pytest.fixture(scope="session")
def division3(strat3):
    return chain_division(strat3)


_verdicts = []


class Criterion:
    """Records one acceptance verdict and prints it as soon as it is known."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title

    def check(self, ok: bool, detail: str) -> None:
        line = f"criterion {self.number} {'PASS' if ok else 'FAIL'}: {self.title} ({detail})"
        _verdicts.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _verdicts:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_verdicts, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
