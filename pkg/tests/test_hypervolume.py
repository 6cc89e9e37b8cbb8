import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hvhess.core import PointSet, clip
from hvhess.hypervolume import hv, hvc, hypervolume
from hvhess.oracle import hv_inclusion_exclusion, hv_monte_carlo

from conftest import general_sets


def test_examples(example1, example2, example3):
    assert hv(example1).value == 210
    assert hv(example2).value == 236
    assert hv(example3).value == hv_inclusion_exclusion(example3) == 386


def test_small_cases():
    assert hv(PointSet(np.zeros((1, 2)), np.ones(2))).value == 1
    assert hv(PointSet(np.empty((0, 3)), np.ones(3))).value == 0
    assert hypervolume([[2.0]], [5.0]) == 3


def test_zero_dimensional_set_has_unit_measure():
    assert hypervolume(np.empty((2, 0)), np.empty(0)) == 1.0
    assert hypervolume(np.empty((0, 0)), np.empty(0)) == 0.0


def test_dominated_count():
    ps = PointSet(np.array([[1.0, 1.0, 1.0], [2.0, 2.0, 2.0], [0.5, 3.0, 0.2]]), np.full(3, 4.0))
    assert hv(ps).dominated_count == 1


@pytest.mark.parametrize(
    "y, others, expected",
    [((2, 1), [(5, 3)], 35), ((5, 3), [], 28), ((5, 3), [(2, 1)], 0)],
)
def test_hvc(y, others, expected):
    assert hvc(y, others, (9, 10)) == expected


def test_hvc_dimension_mismatch():
    with pytest.raises(ValueError):
        hvc((1, 2, 3), [], (9, 10))


@given(general_sets(max_n=10, max_m=5))
def test_hv_matches_inclusion_exclusion(ps):
    assert hv(ps).value == hv_inclusion_exclusion(ps)


@given(general_sets(min_n=1, max_n=7, max_m=4), st.data())
def test_hvc_is_the_removal_loss(ps, data):
    i = data.draw(st.integers(0, ps.n - 1))
    rest = np.delete(ps.points, i, axis=0)
    loss = hypervolume(ps.points, ps.reference) - hypervolume(rest, ps.reference)
    assert hvc(ps.points[i], rest, ps.reference) == pytest.approx(loss, abs=1e-9)


@given(general_sets(min_n=2, max_n=7, min_m=2, max_m=4), st.data())
def test_clipping_preserves_the_contribution(ps, data):
    i = data.draw(st.integers(0, ps.n - 1))
    y = ps.points[i]
    rest = np.delete(ps.points, i, axis=0)
    assert hvc(y, clip(rest, y), ps.reference) == hvc(y, rest, ps.reference)


def test_monte_carlo_covers_example1(example1):
    est, se = hv_monte_carlo(example1, 1_000_000, seed=7)
    assert abs(est - 210) <= 3 * se


def test_monte_carlo_is_seeded(example2):
    assert hv_monte_carlo(example2, 50_000, seed=3) == hv_monte_carlo(example2, 50_000, seed=3)
