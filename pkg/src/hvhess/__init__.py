"""Hypervolume indicator, its gradient and its Hessian for vectorized point sets."""

from .core import (
    GeneralPositionError,
    GeneralPositionReport,
    InvalidPointSetError,
    PointSet,
    check_general_position,
    clip,
    concat,
    deconcat,
    dominates,
    pareto_filter,
    project,
)
from .gradient import GradientVector, hv_gradient, hv_gradient_decision
from .hessian3d import SweepFront, hessian_3d_sweep, sweep_front_insert
from .hessian_nd import hessian_decision, hessian_objective, hvc_derivative
from .hypervolume import HvResult, hv, hvc, hypervolume
from .model import ObjectiveModel
from .problems import make_quadratic_mop, newton_step
from .sparse import SparseSymMatrix

__version__ = "0.1.0"

__all__ = [
    "GeneralPositionError",
    "GeneralPositionReport",
    "GradientVector",
    "HvResult",
    "InvalidPointSetError",
    "ObjectiveModel",
    "PointSet",
    "SparseSymMatrix",
    "SweepFront",
    "check_general_position",
    "clip",
    "concat",
    "deconcat",
    "dominates",
    "hessian_3d_sweep",
    "hessian_decision",
    "hessian_objective",
    "hv",
    "hv_gradient",
    "hv_gradient_decision",
    "hvc",
    "hvc_derivative",
    "hypervolume",
    "make_quadratic_mop",
    "newton_step",
    "pareto_filter",
    "project",
    "sweep_front_insert",
]
