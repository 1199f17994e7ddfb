import numpy as np
import pytest

from polycat.scenario import PRESETS, preset

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store one acceptance line: record(number, passed, text)."""
    def _record(number, passed, text):
        ACCEPTANCE[number] = (bool(passed), text)
    return _record


@pytest.fixture(scope="session")
def presets():
    return {name: preset(name) for name in PRESETS}


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {text}")
