"""Test problems, random point-set generators and a hypervolume Newton step."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import InvalidPointSetError, PointSet, check_general_position
from .gradient import DominatedPointWarning, hv_gradient, hv_gradient_decision
from .hessian_nd import hessian_decision
from .hypervolume import hv
from .model import ObjectiveModel

__all__ = [
    "NewtonResult",
    "ProblemSpec",
    "make_quadratic_mop",
    "newton_step",
    "random_front",
    "random_point_set",
]


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    name: str
    d: int
    m: int
    centers: np.ndarray


def make_quadratic_mop(d: int, m: int, centers) -> ObjectiveModel:
    """``f_j(x) = ||x - c_j||^2`` for each centre ``c_j``."""
    C = np.asarray(centers, dtype=float)
    if C.shape != (m, d):
        raise ValueError(f"need {m} centres in R^{d}, got array of shape {C.shape}")
    if m < 2:
        raise ValueError("a multiobjective problem needs m >= 2")
    if len({tuple(c) for c in C.tolist()}) != m:
        raise ValueError("centres must be distinct")
    C.setflags(write=False)
    spec = ProblemSpec("quad", d, m, C)
    hess = np.broadcast_to(2.0 * np.eye(d), (m, d, d))

    def evaluate(x):
        diff = x - C
        return np.einsum("jk,jk->j", diff, diff)

    def jacobian(x):
        return 2.0 * (x - C)

    return ObjectiveModel(m, d, evaluate, jacobian, lambda x: hess.copy(), name="quad", spec=spec)


def random_front(n: int, m: int, rng: np.random.Generator, shape: str = "sphere") -> np.ndarray:
    """``n`` mutually non-dominated points in ``(0, 1)^m``.

    ``sphere`` reflects the positive part of the unit sphere through the
    all-ones corner, ``simplex`` draws from the unit simplex.
    """
    v = np.abs(rng.standard_normal((n, m))) + 1e-12
    if shape == "sphere":
        return 1.0 - v / np.linalg.norm(v, axis=1, keepdims=True)
    if shape == "simplex":
        v = rng.exponential(size=(n, m))
        return v / v.sum(axis=1, keepdims=True)
    raise ValueError(f"unknown front shape {shape!r}")


def random_point_set(
    n: int,
    m: int,
    rng: np.random.Generator,
    *,
    front: bool = False,
    min_gap: float = 0.0,
    margin: float = 0.1,
    max_tries: int = 1000,
) -> PointSet:
    """Random general-position set in ``[0, 1]^m`` with reference ``1 + margin``.

    Draws are repeated until every pair of coordinates on every axis is
    separated by more than ``min_gap`` (the cell a finite-difference stencil
    of that width stays inside).
    """
    ref = np.full(m, 1.0 + margin)
    for _ in range(max_tries):
        Y = random_front(n, m, rng) if front else rng.random((n, m))
        if n > 1:
            gaps = np.diff(np.sort(Y, axis=0), axis=0)
            if gaps.min() <= min_gap:
                continue
        if np.min(ref - Y, initial=np.inf) <= min_gap:
            continue
        return PointSet(Y, ref)
    raise RuntimeError("could not draw a set with the requested coordinate gap")


@dataclass(frozen=True, eq=False)
class NewtonResult:
    X_next: np.ndarray
    hv_before: float
    hv_after: float
    step: float
    fallback: bool = False
    reason: str = ""


def _hv_or_none(X, model: ObjectiveModel, reference) -> float | None:
    try:
        return hv(PointSet(model.objectives(X), reference)).value
    except InvalidPointSetError:
        return None


def newton_step(
    X,
    model: ObjectiveModel,
    reference,
    *,
    max_halvings: int = 20,
    cond_limit: float = 1e12,
) -> NewtonResult:
    """One hypervolume Newton step with step halving.

    The direction solves ``H d = -grad`` over the blocks of non-dominated
    points; dominated points stay where they are.  When the Hessian is unavailable
    (tied objective values) or its condition estimate exceeds ``cond_limit``,
    or the Newton direction does not ascend, a gradient-ascent direction is
    used instead and the result is flagged.  The step is halved until the
    hypervolume does not decrease; if that never happens ``X`` is returned.
    """
    X = model._rows(X)
    hv0 = _hv_or_none(X, model, reference)
    if hv0 is None:
        raise InvalidPointSetError("objective vectors of X do not dominate the reference")
    Y = model.objectives(X)
    fallback, reason = False, ""
    if not check_general_position(Y).ok:
        fallback, reason = True, "objective values are not in general position"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DominatedPointWarning)
            gy = hv_gradient(PointSet(Y, reference), require_general=False).values.reshape(-1, model.m)
        grad = np.einsum("ij,ijk->ik", gy, model.jacobians(X)).reshape(-1)
        direction = grad
    else:
        g = hv_gradient_decision(X, model, reference)
        grad = g.values
        # dominated points have zero rows; solve on the remaining blocks
        active = np.setdiff1d(np.arange(X.shape[0]), g.dominated)
        cols = (active[:, None] * model.d + np.arange(model.d)).reshape(-1)
        H = hessian_decision(X, model, reference).to_dense()[np.ix_(cols, cols)]
        cond = np.linalg.cond(H) if H.size else np.inf
        if not np.isfinite(cond) or cond > cond_limit:
            fallback, reason = True, f"singular Hessian (condition estimate {cond:.3g})"
            direction = grad
        else:
            direction = np.zeros_like(grad)
            direction[cols] = -scipy.linalg.solve(H, grad[cols], assume_a="sym")
            if direction @ grad <= 0:
                fallback, reason = True, "Newton direction does not ascend"
                direction = grad

    d = direction.reshape(X.shape)
    step = 1.0
    for _ in range(max_halvings + 1):
        X_try = X + step * d
        hv1 = _hv_or_none(X_try, model, reference)
        if hv1 is not None and hv1 >= hv0:
            return NewtonResult(X_try, hv0, hv1, step, fallback, reason)
        step *= 0.5
    return NewtonResult(X.copy(), hv0, hv0, 0.0, fallback, reason or "no step kept the hypervolume")
