import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import F1_COHORTS, f1  # noqa: E402


@pytest.fixture
def f1_graph():
    return f1()


@pytest.fixture
def f1_series():
    from nobelnet.construct import build_series

    return build_series(f1(), F1_COHORTS)


@pytest.fixture
def f1_1975(f1_series):
    return f1_series.at(1975)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
