"""First derivatives of the hypervolume in objective and decision space."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import PointSet, pareto_filter, project, require_general_position
from .hypervolume import hvc
from .model import ObjectiveModel

__all__ = ["DominatedPointWarning", "GradientVector", "hv_gradient", "hv_gradient_decision"]


class DominatedPointWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class GradientVector:
    """Gradient in concat layout; ``dominated`` lists points given zero entries."""

    values: np.ndarray
    dominated: tuple[int, ...] = field(default=())

    @property
    def has_dominated(self) -> bool:
        return bool(self.dominated)

    def block(self, i: int, width: int) -> np.ndarray:
        return self.values[i * width : (i + 1) * width]


def hv_gradient(pointset: PointSet, *, require_general: bool = True) -> GradientVector:
    """dHV/dY.  Entry ``(i, k)`` is minus the contribution of point i's
    projection along axis k among the projections of points lying strictly
    below it on that axis.

    Dominated points get zero entries and a :class:`DominatedPointWarning`.
    With ``require_general=False`` tied inputs are accepted and the formula is
    applied as is, which yields a one-sided derivative.
    """
    if require_general:
        require_general_position(pointset)
    Y, r = pointset.points, pointset.reference
    n, m = Y.shape
    grad = np.zeros((n, m))
    keep = pareto_filter(Y)
    dominated = tuple(sorted(set(range(n)) - set(keep.tolist())))
    if dominated:
        warnings.warn(f"points {list(dominated)} are dominated; their gradient is zero", DominatedPointWarning, stacklevel=2)
    Yk = Y[keep]
    for k in range(m):
        P = project(Yk, k)
        r_ = project(r, k)
        for a, i in enumerate(keep):
            below = Yk[:, k] < Y[i, k]
            grad[i, k] = -hvc(P[a], P[below], r_)
    return GradientVector(grad.reshape(-1), dominated)


def hv_gradient_decision(X, model: ObjectiveModel, reference) -> GradientVector:
    """Chain rule: per point, the objective gradient block times its Jacobian."""
    Xr = model._rows(X)
    pointset = PointSet(model.objectives(Xr), reference)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DominatedPointWarning)
        g = hv_gradient(pointset)
    J = model.jacobians(Xr)
    G = g.values.reshape(-1, model.m)
    out = np.einsum("ij,ijk->ik", G, J)
    return GradientVector(out.reshape(-1), g.dominated)
