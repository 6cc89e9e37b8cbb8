import numpy as np
import pytest
from hypothesis import given

from hvhess.core import PointSet
from hvhess.hessian_nd import (
    decision_hessian_terms,
    hessian_decision,
    hessian_objective,
    hessian_objective_columns,
    hvc_derivative,
)
from hvhess.hypervolume import hv
from hvhess.oracle import FdConfig, fd_hessian, hv_fd_hessian
from hvhess.problems import make_quadratic_mop

from conftest import general_sets

EXACT = FdConfig(h=0.25)


def test_hvc_derivative_single_box():
    assert hvc_derivative((5, 3), [], (9, 10)).tolist() == [-7, -4]
    assert hvc_derivative((4,), [], (9,)).tolist() == [-1]


def test_hvc_derivative_with_partial_cover():
    # HVC = (9 - y1)(10 - y2) - (9 - 5)(10 - 3) while y is below (5, 3)
    assert hvc_derivative((2, 1), [(5, 3)], (9, 10)).tolist() == [-9, -7]


def test_single_point_entry():
    ps = PointSet(np.array([[5.0, 3.0, 7.0]]), np.array([9.0, 10.0, 12.0]))
    assert hessian_objective(ps).get(0, 1) == 5


def test_example1_cross_entry(example1):
    assert hessian_objective(example1).get(0, 5) == -7


def test_two_points_in_the_plane():
    ps = PointSet(np.array([[1.0, 3.0], [2.0, 1.0]]), np.full(2, 4.0))
    H = hessian_objective(ps)
    assert H.get(1, 2) == -1
    assert H.get(0, 1) == 1 and H.get(2, 3) == 1


def test_example_matrices_match_exact_differences(example1, example2, example3):
    for ps in (example1, example2, example3):
        assert np.array_equal(hessian_objective(ps).to_dense(), hv_fd_hessian(ps, FdConfig(h=0.125)))


@given(general_sets(max_n=6, max_m=4))
def test_hessian_matches_exact_differences(ps):
    assert np.allclose(hessian_objective(ps).to_dense(), hv_fd_hessian(ps, EXACT), atol=1e-9)


@given(general_sets(max_n=6, max_m=4))
def test_columns_are_symmetric_before_merging(ps):
    cols = hessian_objective_columns(ps)
    for (a, b), v in cols.items():
        assert abs(cols.get((b, a), 0.0) - v) <= 1e-9


@given(general_sets(max_n=6, min_m=2, max_m=4))
def test_zero_and_sign_pattern(ps):
    m = ps.m
    H = hessian_objective(ps)
    rows, cols, vals = H.full_entries()
    for a, b, v in zip(rows.tolist(), cols.tolist(), vals.tolist()):
        assert a % m != b % m
        assert v >= 0 if a // m == b // m else v <= 0
    assert H.nnz <= (ps.n * m) ** 2


def _quad_setup(n=4, seed=1):
    model = make_quadratic_mop(2, 2, [[0.0, 0.0], [1.0, 0.0]])
    ref = np.array([2.5, 2.5])
    X = np.random.default_rng(seed).random((n, 2))
    return model, ref, X


def test_decision_hessian_matches_finite_differences():
    model, ref, X = _quad_setup()
    fn = lambda v: hv(PointSet(model.objectives(v), ref)).value
    H = hessian_decision(X, model, ref).to_dense()
    fd = fd_hessian(fn, X.reshape(-1))
    assert np.all(np.abs(H - fd) <= np.maximum(1e-6, 1e-4 * np.abs(fd)))


def test_tensor_term_is_block_diagonal():
    model, ref, X = _quad_setup(n=5, seed=3)
    _, second = decision_hessian_terms(X, model, ref)
    dense = second.toarray()
    d = model.d
    for i in range(X.shape[0]):
        dense[i * d : (i + 1) * d, i * d : (i + 1) * d] = 0
    assert not dense.any()


def test_decision_hessian_is_symmetric():
    model, ref, X = _quad_setup(n=6, seed=8)
    H = hessian_decision(X, model, ref).to_dense()
    assert np.array_equal(H, H.T)
