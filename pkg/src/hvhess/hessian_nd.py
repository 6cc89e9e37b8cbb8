"""Hypervolume Hessian for any number of objectives.

Column ``(i, k)`` of the objective-space Hessian differentiates
``dHV/dy_k^(i) = -HVC(proj_k y^(i), proj_k {y : y_k < y_k^(i)})``.

* Same point, axis ``l != k``: ``+HVC`` one dimension lower, obtained by
  projecting again along ``l``.
* Other point ``j`` below ``i`` on axis ``k``: after clipping the lower
  projections from below by ``proj_k y^(i)``, the column equals the
  hypervolume gradient of the clipped set, i.e. ``-HVC`` one dimension
  lower.  Coordinates that the clipping replaces contribute zero.
* ``(i, k), (i, k)`` and ``(i, k), (j, k)`` are structurally zero.

The decision-space Hessian adds the chain rule:
``H = J^T A J + blockdiag_i(sum_b g_ib * T_ib)``.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.sparse as sp

from .core import PointSet, clip, pareto_filter, project, require_general_position
from .gradient import DominatedPointWarning, hv_gradient
from .hypervolume import hvc
from .model import ObjectiveModel
from .sparse import SparseSymMatrix

__all__ = [
    "decision_hessian_terms",
    "hessian_decision",
    "hessian_objective",
    "hessian_objective_columns",
    "hvc_derivative",
]


def hvc_derivative(y, others, reference) -> np.ndarray:
    """Gradient of ``HVC(y, others)`` with respect to ``y``.

    Component ``p`` is ``-HVC(proj_p y, proj_p {o : o_p < y_p})``; at
    dimension one this is -1 for a non-dominated ``y`` and 0 otherwise.
    """
    y = np.asarray(y, dtype=float)
    ref = np.asarray(reference, dtype=float)
    q = y.shape[0]
    if q < 1:
        raise ValueError("hvc_derivative needs dimension >= 1")
    others = np.asarray(others, dtype=float).reshape(-1, q)
    out = np.empty(q)
    for p in range(q):
        below = others[others[:, p] < y[p]]
        out[p] = -hvc(project(y, p), project(below, p), project(ref, p))
    return out


def _insert_axis(v: np.ndarray, k: int) -> list[tuple[int, float]]:
    """Pair projected components with their original axis (skipping ``k``)."""
    return [(p if p < k else p + 1, float(x)) for p, x in enumerate(v)]


def hessian_objective_columns(pointset: PointSet) -> dict[tuple[int, int], float]:
    """Non-zero entries ``{(row, col): value}`` computed column by column.

    Both halves are produced independently, so comparing ``(a, b)`` with
    ``(b, a)`` measures the asymmetry before symmetrization.
    """
    require_general_position(pointset)
    Y, r = pointset.points, pointset.reference
    m = pointset.m
    keep = pareto_filter(Y)
    Yk = Y[keep]
    out: dict[tuple[int, int], float] = {}
    if m < 2:
        return out
    for k in range(m):
        r_ = project(r, k)
        P = project(Yk, k)
        for a, i in enumerate(keep):
            col = i * m + k
            below = np.flatnonzero(Yk[:, k] < Y[i, k])
            y_ = P[a]
            lower = P[below]
            for l, v in _insert_axis(-hvc_derivative(y_, lower, r_), k):
                if v != 0.0:
                    out[(i * m + l, col)] = v
            if below.size == 0:
                continue
            clipped = clip(lower, y_)
            for b, j in zip(range(below.size), keep[below]):
                free = lower[b] > y_
                if not np.any(free):
                    continue
                w = hvc_derivative(clipped[b], clipped, r_)
                for l, v in _insert_axis(np.where(free, w, 0.0), k):
                    if v != 0.0:
                        out[(j * m + l, col)] = v
    return out


def hessian_objective(pointset: PointSet, *, atol: float = 1e-9) -> SparseSymMatrix:
    """d^2 HV / dY dY^T in concat layout; dominated points give zero rows."""
    cols = hessian_objective_columns(pointset)
    return SparseSymMatrix.from_entries(pointset.n * pointset.m, cols, atol=atol)


def _block_diag(blocks: np.ndarray) -> sp.csr_array:
    return sp.block_diag(list(blocks), format="csr") if len(blocks) else sp.csr_array((0, 0))


def decision_hessian_terms(X, model: ObjectiveModel, reference):
    """The two chain-rule terms, ``J^T A J`` and the block-diagonal tensor term.

    Both are returned as scipy sparse arrays of shape ``(n d, n d)``.
    """
    Xr = model._rows(X)
    pointset = PointSet(model.objectives(Xr), reference)
    A = hessian_objective(pointset).to_scipy()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DominatedPointWarning)
        g = hv_gradient(pointset).values.reshape(-1, model.m)
    J = _block_diag(model.jacobians(Xr))
    first = sp.csr_array(J.T @ A @ J)
    T = model.hessian_blocks(Xr)
    second = _block_diag(np.einsum("ib,ibpq->ipq", g, T))
    return first, second


def hessian_decision(X, model: ObjectiveModel, reference) -> SparseSymMatrix:
    first, second = decision_hessian_terms(X, model, reference)
    H = first + second
    H = 0.5 * (H + H.T)
    return SparseSymMatrix.from_scipy(H)
