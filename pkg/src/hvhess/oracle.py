"""Independent reference computations used to check the analytic results.

Nothing here shares code with the sweep or the recursive algorithms: the
hypervolume comes from inclusion-exclusion or sampling, derivatives from
central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import PointSet

__all__ = [
    "FdConfig",
    "FdDomainError",
    "fd_gradient",
    "fd_hessian",
    "hv_fd_gradient",
    "hv_fd_hessian",
    "hv_inclusion_exclusion",
    "hv_monte_carlo",
    "within_tolerance",
]

MAX_INCLUSION_EXCLUSION = 20


class FdDomainError(ValueError):
    """A perturbed evaluation left the function's domain."""


@dataclass(frozen=True)
class FdConfig:
    h: float = 1e-5
    relative_tol: float = 1e-6
    absolute_tol: float = 1e-8

    def __post_init__(self):
        if not (self.h > 0 and self.relative_tol > 0 and self.absolute_tol > 0):
            raise ValueError("step and tolerances must be positive")

    @classmethod
    def for_hessian(cls) -> "FdConfig":
        return cls(h=1e-4, relative_tol=1e-4, absolute_tol=1e-6)


def within_tolerance(analytic, reference, cfg: FdConfig) -> bool:
    a = np.asarray(analytic, dtype=float)
    b = np.asarray(reference, dtype=float)
    return bool(np.all(np.abs(a - b) <= np.maximum(cfg.absolute_tol, cfg.relative_tol * np.abs(b))))


def hv_inclusion_exclusion(pointset: PointSet) -> float:
    """Sum over non-empty subsets of signed intersection-box volumes."""
    Y, r = pointset.points, pointset.reference
    n = Y.shape[0]
    if n > MAX_INCLUSION_EXCLUSION:
        raise ValueError(f"inclusion-exclusion limited to {MAX_INCLUSION_EXCLUSION} points, got {n}")
    total = 0.0

    def visit(start: int, corner: np.ndarray, size: int) -> None:
        nonlocal total
        for i in range(start, n):
            c = np.maximum(corner, Y[i])
            extent = np.clip(r - c, 0.0, None)
            vol = float(np.prod(extent))
            if vol == 0.0:
                # every superset shares the empty box
                continue
            total += vol if size % 2 == 0 else -vol
            visit(i + 1, c, size + 1)

    visit(0, np.full(pointset.m, -np.inf), 0)
    return total


def _call(fn: Callable, x: np.ndarray) -> float:
    try:
        return float(fn(x))
    except ValueError as exc:
        raise FdDomainError(f"function undefined at a perturbed point: {exc}") from exc


def fd_gradient(fn: Callable[[np.ndarray], float], at, cfg: FdConfig = FdConfig()) -> np.ndarray:
    x = np.asarray(at, dtype=float).reshape(-1)
    h = cfg.h
    out = np.empty(x.size)
    for a in range(x.size):
        e = np.zeros(x.size)
        e[a] = h
        out[a] = (_call(fn, x + e) - _call(fn, x - e)) / (2 * h)
    return out


def fd_hessian(fn: Callable[[np.ndarray], float], at, cfg: FdConfig | None = None) -> np.ndarray:
    """Dense symmetric central-difference Hessian."""
    cfg = cfg or FdConfig.for_hessian()
    x = np.asarray(at, dtype=float).reshape(-1)
    N, h = x.size, cfg.h
    steps = np.eye(N) * h
    f0 = _call(fn, x)
    plus = np.array([_call(fn, x + steps[a]) for a in range(N)])
    minus = np.array([_call(fn, x - steps[a]) for a in range(N)])
    H = np.zeros((N, N))
    for a in range(N):
        H[a, a] = (plus[a] - 2 * f0 + minus[a]) / h**2
        for b in range(a + 1, N):
            ea, eb = steps[a], steps[b]
            v = (
                _call(fn, x + ea + eb)
                - _call(fn, x + ea - eb)
                - _call(fn, x - ea + eb)
                + _call(fn, x - ea - eb)
            ) / (4 * h**2)
            H[a, b] = H[b, a] = v
    return H


def _ie_terms(Y: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Signed volume of every non-empty subset's intersection box.

    Subset ``s`` (a bit mask over the rows of ``Y``) sits at index ``s``; the
    empty subset gets 0.  The sum of the result is the hypervolume.
    """
    n, m = Y.shape
    corners = np.full((1, m), -np.inf)
    signs = np.array([-1.0])
    for b in range(n):
        corners = np.concatenate([corners, np.maximum(corners, Y[b])])
        signs = np.concatenate([signs, -signs])
    vol = np.prod(np.clip(r - corners[1:], 0.0, None), axis=1)
    return np.concatenate([[0.0], signs[1:] * vol])


def _stencil_sum(pointset: PointSet, moves: list[tuple[list[tuple[int, float]], float]]) -> float:
    """``sum_c weight_c * HV(Y + displacement_c)`` differenced subset by subset."""
    Y, r = pointset.points, pointset.reference
    flat = Y.reshape(-1)
    acc = np.zeros(2 ** Y.shape[0])
    for disp, weight in moves:
        y = flat.copy()
        for a, delta in disp:
            y[a] += delta
        acc += weight * _ie_terms(y.reshape(Y.shape), r)
    return math.fsum(acc)


def _check_ie_size(pointset: PointSet) -> None:
    if pointset.n > MAX_INCLUSION_EXCLUSION:
        raise ValueError(f"inclusion-exclusion limited to {MAX_INCLUSION_EXCLUSION} points, got {pointset.n}")


def hv_fd_gradient(pointset: PointSet, cfg: FdConfig = FdConfig()) -> np.ndarray:
    """Central-difference gradient of the hypervolume, computed from
    inclusion-exclusion terms so that unperturbed subsets cancel exactly."""
    _check_ie_size(pointset)
    h = cfg.h
    N = pointset.n * pointset.m
    return np.array([_stencil_sum(pointset, [([(a, h)], 1.0), ([(a, -h)], -1.0)]) / (2 * h) for a in range(N)])


def hv_fd_hessian(pointset: PointSet, cfg: FdConfig | None = None) -> np.ndarray:
    """Central second differences of the hypervolume (same stencils as
    :func:`fd_hessian`), differenced term by term."""
    _check_ie_size(pointset)
    cfg = cfg or FdConfig.for_hessian()
    h = cfg.h
    N = pointset.n * pointset.m
    H = np.zeros((N, N))
    for a in range(N):
        H[a, a] = _stencil_sum(pointset, [([(a, h)], 1.0), ([], -2.0), ([(a, -h)], 1.0)]) / h**2
        for b in range(a + 1, N):
            moves = [
                ([(a, h), (b, h)], 1.0),
                ([(a, h), (b, -h)], -1.0),
                ([(a, -h), (b, h)], -1.0),
                ([(a, -h), (b, -h)], 1.0),
            ]
            H[a, b] = H[b, a] = _stencil_sum(pointset, moves) / (4 * h**2)
    return H


def hv_monte_carlo(pointset: PointSet, samples: int, seed=0, chunk: int = 200_000) -> tuple[float, float]:
    """Uniform sampling in the bounding box ``[min(Y), r]``.

    Returns the estimate and its standard error.  Chunks draw from child
    seeds of one ``SeedSequence`` so the result depends only on ``seed``.
    """
    Y, r = pointset.points, pointset.reference
    if Y.shape[0] == 0:
        return 0.0, 0.0
    if samples <= 0:
        raise ValueError("samples must be positive")
    lo = Y.min(axis=0)
    extent = r - lo
    if np.any(extent <= 0):
        raise ValueError("bounding box has zero volume")
    box = float(np.prod(extent))
    n_chunks = -(-samples // chunk)
    hits = 0
    for c, child in enumerate(np.random.SeedSequence(seed).spawn(n_chunks)):
        size = min(chunk, samples - c * chunk)
        u = lo + np.random.default_rng(child).random((size, Y.shape[1])) * extent
        covered = np.zeros(size, dtype=bool)
        for y in Y:
            covered |= np.all(u >= y, axis=1)
        hits += int(covered.sum())
    frac = hits / samples
    return box * frac, box * float(np.sqrt(frac * (1 - frac) / samples))
