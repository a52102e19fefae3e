import math
from pathlib import Path

import pytest

from trollfarm.electorate import normal_electorate
from trollfarm.signals import gaussian_family

ROOT = Path(__file__).resolve().parents[1]
EXAMPLES = ROOT / "examples_config"

# (criterion number, passed, detail), filled by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def gauss():
    return gaussian_family(1.0, 1.0)


@pytest.fixture(scope="session")
def electorate():
    return normal_electorate(0.55, 0.2)


@pytest.fixture
def acceptance():
    def record(number, passed, detail):
        line = f"criterion {number:>2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append((number, passed, line))
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def finite(v):
    return v is not None and math.isfinite(v)
