import sys
from pathlib import Path

import pytest

from tilingideals.graph import build_graph
from tilingideals.region import load_region

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

sys.path.insert(0, str(Path(__file__).parent))


def fixture_region(name):
    return load_region(str(FIXTURES / f"{name}.region"))


@pytest.fixture
def region():
    return fixture_region


@pytest.fixture
def graph_of():
    def make(name):
        return build_graph(fixture_region(name))

    return make


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
