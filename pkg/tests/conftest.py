import numpy as np
import pytest

from qsym.multimatrix import AlgebraShape

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def np_random():
    return np.random.default_rng(20061)


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def shape(*blocks):
    return AlgebraShape(tuple(blocks))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section('acceptance criteria')
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
