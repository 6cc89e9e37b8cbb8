"""Geometric primitives: dominance, projection, clipping, vectorization.

All routines follow the minimization convention and use 0-based indices
for points and axes.  The flat index of coordinate ``k`` of point ``i`` in a
vectorized set is ``i * m + k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GeneralPositionError",
    "GeneralPositionReport",
    "InvalidPointSetError",
    "PointSet",
    "check_general_position",
    "clip",
    "concat",
    "deconcat",
    "dominates",
    "pareto_filter",
    "project",
    "require_general_position",
]


class InvalidPointSetError(ValueError):
    """Malformed points or a point that does not strictly dominate the reference."""


class GeneralPositionError(ValueError):
    """Two points share a coordinate value on some axis."""

    def __init__(self, report: "GeneralPositionReport"):
        self.report = report
        shown = ", ".join(f"(points {i},{j} axis {k})" for i, j, k in report.offending_pairs[:10])
        more = len(report.offending_pairs) - 10
        if more > 0:
            shown += f", ... {more} more"
        super().__init__(f"points are not in general position: {shown}")


def _as_point(p) -> np.ndarray:
    a = np.asarray(p, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D point, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class PointSet:
    """``n`` points in R^m together with a reference point.

    Every point must be strictly smaller than the reference in every
    coordinate.  The arrays are copied and made read-only.
    """

    points: np.ndarray
    reference: np.ndarray

    def __post_init__(self):
        ref = np.array(self.reference, dtype=float)
        if ref.ndim != 1:
            raise InvalidPointSetError(f"reference must be a vector, got shape {ref.shape}")
        pts = np.array(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, ref.shape[0])
        if pts.ndim != 2 or pts.shape[1] != ref.shape[0]:
            raise InvalidPointSetError(
                f"points of shape {pts.shape} do not match reference of length {ref.shape[0]}"
            )
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(ref))):
            raise InvalidPointSetError("coordinates must be finite")
        bad = np.flatnonzero(np.any(pts >= ref, axis=1))
        if bad.size:
            raise InvalidPointSetError(
                f"points {bad[:10].tolist()} do not strictly dominate the reference point"
            )
        pts.setflags(write=False)
        ref.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "reference", ref)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.reference.shape[0]

    @classmethod
    def from_vector(cls, vector, reference) -> "PointSet":
        ref = np.asarray(reference, dtype=float)
        return cls(deconcat(vector, ref.shape[0]), ref)

    def concat(self) -> np.ndarray:
        return concat(self.points)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    offending_pairs: list[tuple[int, int, int]] = field(default_factory=list)


def dominates(p, q) -> bool:
    """True iff ``p`` is componentwise <= ``q`` and differs from it."""
    p, q = _as_point(p), _as_point(q)
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: {p.shape[0]} vs {q.shape[0]}")
    return bool(np.all(p <= q) and np.any(p < q))


def project(p, k: int) -> np.ndarray:
    """Drop coordinate ``k`` (works on a point or on rows of a 2-D array)."""
    a = np.asarray(p, dtype=float)
    m = a.shape[-1]
    if not 0 <= k < m:
        raise IndexError(f"axis {k} out of range for dimension {m}")
    return np.delete(a, k, axis=-1)


def clip(a, b) -> np.ndarray:
    """Raise ``a`` componentwise to at least ``b``.

    Broadcasts, so ``a`` may be a stack of points.  Clipping the points of a
    set by ``b`` leaves the region dominated by ``b`` alone unchanged.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return np.maximum(a, b)


def concat(points) -> np.ndarray:
    """Row-major flattening of an (n, m) point array."""
    return np.asarray(points, dtype=float).reshape(-1).copy()


def deconcat(vector, m: int) -> np.ndarray:
    v = np.asarray(vector, dtype=float).reshape(-1)
    if m <= 0:
        raise ValueError("dimension must be positive")
    if v.size % m:
        raise ValueError(f"vector of length {v.size} is not divisible by m={m}")
    return v.reshape(-1, m).copy()


def _points_of(obj) -> np.ndarray:
    if isinstance(obj, PointSet):
        return obj.points
    pts = np.asarray(obj, dtype=float)
    return pts.reshape(0, 0) if pts.size == 0 and pts.ndim < 2 else pts


def check_general_position(points) -> GeneralPositionReport:
    """List every pair of distinct points sharing a coordinate value.

    Sorting per axis keeps this O(m n log n) when there are no collisions.
    """
    pts = _points_of(points)
    pairs: list[tuple[int, int, int]] = []
    if pts.shape[0] < 2:
        return GeneralPositionReport(True, pairs)
    for k in range(pts.shape[1]):
        order = np.argsort(pts[:, k], kind="stable")
        vals = pts[order, k]
        same = np.flatnonzero(vals[1:] == vals[:-1])
        if same.size == 0:
            continue
        # group runs of equal values, emit all pairs inside each run
        start = None
        for pos in range(len(vals)):
            tied_next = pos + 1 < len(vals) and vals[pos + 1] == vals[pos]
            if start is None and tied_next:
                start = pos
            if start is not None and not tied_next:
                run = sorted(int(i) for i in order[start : pos + 1])
                pairs.extend((i, j, k) for a, i in enumerate(run) for j in run[a + 1 :])
                start = None
    pairs.sort()
    return GeneralPositionReport(not pairs, pairs)


def require_general_position(points) -> None:
    report = check_general_position(points)
    if not report.ok:
        raise GeneralPositionError(report)


def pareto_filter(points) -> np.ndarray:
    """Indices of non-dominated points, in input order.

    Of several identical points only the first survives.
    """
    pts = _points_of(points)
    n = pts.shape[0]
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        le = np.all(pts <= pts[i], axis=1)
        lt = np.any(pts < pts[i], axis=1)
        eq = le & ~lt
        eq[i:] = False
        if np.any(le & lt) or np.any(eq):
            keep[i] = False
    return np.flatnonzero(keep)
