import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from cstar_fc.families import (  # noqa: E402
    INTERVAL_M2,
    NATURALS_R2,
    ExampleConfig,
    build_example_interval,
    build_example_naturals,
)

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture(scope="session")
def interval():
    return build_example_interval(ExampleConfig(INTERVAL_M2))


@pytest.fixture(scope="session")
def interval_space(interval):
    return interval[0]


@pytest.fixture(scope="session")
def interval_spec(interval):
    return interval[1]


@pytest.fixture(scope="session")
def naturals():
    return build_example_naturals(ExampleConfig(NATURALS_R2))


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    def emit(line):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
