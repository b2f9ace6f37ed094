import random

import pytest

from pvp.fields import Q_DILATION, SHIFT

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=[SHIFT, Q_DILATION], ids=lambda s: s.name)
def spec(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
