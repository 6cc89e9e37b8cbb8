import numpy as np
import pytest

from hvhess.core import PointSet
from hvhess.hypervolume import hv
from hvhess.oracle import (
    FdConfig,
    FdDomainError,
    fd_gradient,
    fd_hessian,
    hv_fd_gradient,
    hv_fd_hessian,
    hv_inclusion_exclusion,
    hv_monte_carlo,
    within_tolerance,
)
from hvhess.problems import random_point_set


def test_inclusion_exclusion(example1, example2):
    assert hv_inclusion_exclusion(example1) == 210
    assert hv_inclusion_exclusion(example2) == 236
    assert hv_inclusion_exclusion(PointSet(np.empty((0, 2)), np.ones(2))) == 0


def test_inclusion_exclusion_size_limit():
    ps = PointSet(np.random.default_rng(0).random((21, 2)), np.full(2, 2.0))
    with pytest.raises(ValueError):
        hv_inclusion_exclusion(ps)


def test_fd_gradient_basic(example1):
    fn = lambda v: hv(PointSet.from_vector(v, example1.reference)).value
    g = fd_gradient(fn, example1.concat())
    assert abs(g[2] + 28) < 1e-6
    c = np.array([1.5, -2.0, 0.25])
    assert np.allclose(fd_gradient(lambda x: c @ x, np.zeros(3)), c, atol=1e-9)
    assert np.all(fd_gradient(lambda x: 4.0, np.ones(3)) == 0)


def test_fd_hessian_quadratic_form():
    Q = np.array([[2.0, 0.5, 0.0], [0.5, 1.0, -1.0], [0.0, -1.0, 3.0]])
    H = fd_hessian(lambda x: x @ Q @ x, np.array([0.3, -0.2, 0.9]))
    assert np.allclose(H, 2 * Q, atol=1e-6)
    assert np.array_equal(H, H.T)


def test_fd_domain_error():
    def fn(x):
        if x[0] > 0:
            raise ValueError("outside")
        return 0.0

    with pytest.raises(FdDomainError):
        fd_gradient(fn, np.zeros(1))


def test_config_validation():
    with pytest.raises(ValueError):
        FdConfig(h=0.0)
    with pytest.raises(ValueError):
        FdConfig(relative_tol=-1.0)
    assert FdConfig.for_hessian().h == 1e-4


def test_within_tolerance():
    cfg = FdConfig(absolute_tol=1e-8, relative_tol=1e-6)
    assert within_tolerance([1000.0], [1000.0005], cfg)
    assert not within_tolerance([1e-7], [0.0], cfg)


def test_monte_carlo_edge_cases():
    unit = PointSet(np.zeros((1, 3)), np.ones(3))
    assert hv_monte_carlo(unit, 1000, seed=1) == (1.0, 0.0)
    assert hv_monte_carlo(PointSet(np.empty((0, 2)), np.ones(2)), 10) == (0.0, 0.0)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_termwise_differences_agree_with_plain_ones(m):
    ps = random_point_set(5, m, np.random.default_rng(m), min_gap=1e-3)
    fn = lambda v: hv(PointSet.from_vector(v, ps.reference)).value
    assert np.allclose(hv_fd_gradient(ps), fd_gradient(fn, ps.concat()), atol=1e-9)
    assert np.allclose(hv_fd_hessian(ps), fd_hessian(fn, ps.concat()), atol=1e-6)
