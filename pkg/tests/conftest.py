import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from seqlab.field import make_field  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def f5():
    return make_field(5, 2)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
