import numpy as np
import pytest

from metacyclic.algebra import GroupParams
from metacyclic.cli import grid_points

GRID_N = [3, 5, 7, 9, 11, 13, 15]
GRID_M = [2, 3, 4, 6]
GRID_Q = [2, 3, 4, 5, 7, 8, 9]

# a spread of small instances for the per-module tests
SMALL = [
    (3, 2, 2, 2),
    (5, 2, 4, 3),
    (5, 4, 2, 3),
    (7, 3, 2, 2),
    (7, 6, 3, 2),
    (7, 2, 6, 3),
    (9, 2, 8, 2),
    (9, 3, 4, 2),
    (5, 2, 4, 4),
    (7, 3, 2, 4),
    (3, 2, 2, 5),
    (13, 2, 12, 5),
]


def full_grid():
    return grid_points(GRID_N, GRID_M, GRID_Q)


@pytest.fixture(params=SMALL, ids=lambda p: "G{}_{}_{}-q{}".format(*p))
def params(request):
    return GroupParams(*request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_vectors(params, rng, count):
    return rng.integers(0, params.q, size=(count, params.order))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
