import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treeorder.construction import build_realization  # noqa: E402
from treeorder.reduction import EXAMPLE_CASE, Assignment, encode  # noqa: E402

EXAMPLE_H = Assignment((1, -1, -1, 1))


@pytest.fixture(scope="session")
def example_m():
    return encode(EXAMPLE_CASE)


@pytest.fixture(scope="session")
def example_th(example_m):
    t, report = build_realization(EXAMPLE_CASE, EXAMPLE_H, example_m)
    return t, report


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str) -> bool:
    line = f"[{criterion}] {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
