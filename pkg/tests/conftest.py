from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from hvhess.core import PointSet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).resolve().parents[1] / "data"


def load_example(number: int) -> PointSet:
    doc = json.loads((DATA / f"example{number}.json").read_text(encoding="utf-8"))
    return PointSet(np.array(doc["points"], dtype=float), np.array(doc["reference"], dtype=float))


@pytest.fixture
def example1() -> PointSet:
    return load_example(1)


@pytest.fixture
def example2() -> PointSet:
    return load_example(2)


@pytest.fixture
def example3() -> PointSet:
    return load_example(3)


# four points on a 3-D front whose full Hessian has 44 > 12n - 6 non-zeros
DENSE_FRONT = PointSet(
    np.array([[47, 51, 75], [95, 4, 15], [82, 94, 25], [31, 87, 42]], dtype=float),
    np.array([101, 101, 101], dtype=float),
)


def lattice_set(columns: list[list[int]], n: int) -> PointSet:
    m = len(columns)
    Y = np.array(columns, dtype=float).T.reshape(n, m)
    return PointSet(Y, np.full(m, float(n)))


def general_sets(min_n: int = 0, max_n: int = 6, min_m: int = 1, max_m: int = 4):
    """General-position sets on the integer lattice with unit coordinate gaps."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        m = draw(st.integers(min_m, max_m))
        n = draw(st.integers(min_n, max_n))
        cols = [draw(st.permutations(list(range(n)))) for _ in range(m)]
        return lattice_set(cols, n)

    return build()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
