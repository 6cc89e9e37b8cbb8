"""Exact hypervolume indicator and hypervolume contributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PointSet, clip, pareto_filter
from .hessian3d import SweepFront

__all__ = ["HvResult", "hv", "hvc", "hypervolume"]


@dataclass(frozen=True)
class HvResult:
    value: float
    dominated_count: int

    def __float__(self) -> float:
        return self.value


def hv(pointset: PointSet) -> HvResult:
    """Lebesgue measure of the region dominated by the set and bounded by the reference."""
    if not isinstance(pointset, PointSet):
        raise TypeError("hv expects a PointSet; use hypervolume() for raw arrays")
    pts, ref = pointset.points, pointset.reference
    if pointset.m == 3:
        value, dominated = _hv3(pts, ref)
    else:
        value = hypervolume(pts, ref)
        dominated = pointset.n - len(pareto_filter(pts)) if pointset.n else 0
    return HvResult(float(value), int(dominated))


def hypervolume(points, reference) -> float:
    """Hypervolume of raw arrays.

    Points that fail to dominate the reference simply contribute nothing.
    The empty dimension is allowed: a non-empty 0-dimensional set has
    measure one.
    """
    ref = np.asarray(reference, dtype=float)
    pts = _as_rows(points, ref.shape[0])
    if ref.shape[0] and pts.shape[0]:
        pts = pts[np.all(pts < ref, axis=1)]
    return _hv(pts, ref)


def _as_rows(points, m: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 2:
        return pts
    if m == 0:
        return np.empty((len(points) if pts.ndim else 0, 0))
    return pts.reshape(-1, m)


def _hv(pts: np.ndarray, ref: np.ndarray) -> float:
    n, m = pts.shape
    if n == 0:
        return 0.0
    if m == 0:
        return 1.0
    if m == 1:
        return float(ref[0] - pts[:, 0].min())
    if m == 2:
        return _hv2(pts, ref)
    if m == 3:
        return _hv3(pts, ref)[0]
    return _hv_slice(pts, ref)


def _hv2(pts: np.ndarray, ref: np.ndarray) -> float:
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    area = 0.0
    best = ref[1]
    for x, y in pts[order].tolist():
        if y < best:
            area += (ref[0] - x) * (best - y)
            best = y
    return area


def _hv3(pts: np.ndarray, ref: np.ndarray) -> tuple[float, int]:
    """Sweep up the third axis, keeping the area of the 2-D front current."""
    n = pts.shape[0]
    if n == 0:
        return 0.0, 0
    order = np.lexsort((pts[:, 1], pts[:, 0], pts[:, 2]))
    xs, ys, zs = (pts[order, k].tolist() for k in range(3))
    front = SweepFront(ref[0], ref[1])
    volume = 0.0
    area = 0.0
    dominated = 0
    for t in range(n):
        upd = front.insert(xs[t], ys[t], t)
        if upd is None:
            dominated += 1
        else:
            area += _face_area(xs[t], ys[t], upd)
        z_next = zs[t + 1] if t + 1 < n else ref[2]
        volume += area * (z_next - zs[t])
    return volume, dominated


def _face_area(x: float, y: float, upd) -> float:
    """Area of the new point's box not covered by the front before insertion."""
    area = 0.0
    left, height = x, upd.lower.w
    for q in upd.dominated:
        area += (q.l - left) * (height - y)
        left, height = q.l, q.w
    return area + (upd.upper.l - left) * (height - y)


def _hv_slice(pts: np.ndarray, ref: np.ndarray) -> float:
    """Slice along the last axis; each slab is a (m-1)-dim front times its thickness."""
    order = np.argsort(pts[:, -1], kind="stable")
    heights = pts[order, -1]
    proj = pts[order, :-1]
    front = np.empty((0, proj.shape[1]))
    volume = 0.0
    n = len(order)
    for t in range(n):
        p = proj[t]
        if not np.any(np.all(front <= p, axis=1)):
            front = np.vstack([front[~np.all(p <= front, axis=1)], p])
        top = heights[t + 1] if t + 1 < n else ref[-1]
        if top > heights[t]:
            volume += _hv(front, ref[:-1]) * (top - heights[t])
    return volume


def hvc(y, others, reference) -> float:
    """Hypervolume contribution of ``y`` relative to ``others``.

    Equals ``hypervolume(others + [y]) - hypervolume(others)``; computed as
    the volume of ``y``'s box minus the hypervolume of ``others`` clipped
    from below by ``y``, which avoids differencing two large volumes.
    """
    ref = np.asarray(reference, dtype=float)
    y = np.asarray(y, dtype=float)
    m = ref.shape[0]
    if y.shape != (m,):
        raise ValueError(f"dimension mismatch: point {y.shape} vs reference ({m},)")
    others = _as_rows(others, m)
    if np.any(y >= ref):
        return 0.0
    box = float(np.prod(ref - y))
    if others.shape[0] == 0:
        return box
    return box - hypervolume(clip(others, y), ref)
