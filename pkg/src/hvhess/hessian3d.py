"""Triple dimension sweep for the 3-D hypervolume Hessian in O(n log n).

Each sweep runs along a height axis ``h`` in ascending order while a sorted
front keeps the mutually non-dominated projections of the points seen so
far onto the remaining ``(l, w)`` plane.  When a point ``a`` enters, the part
of its ``(l, w)`` box left uncovered by the front is an axis-aligned
staircase polygon whose area is ``-dHV/da_h``.  The polygon corners are
coordinates of ``a``, of its two front neighbours and of the front members
``a`` dominates, so the mixed second derivatives of that area are edge
lengths of the polygon:

* ``a_l``, ``a_w``: ``+`` edge lengths adjacent to ``a``'s corner;
* neighbours and dominated members: ``-`` the edge they bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from sortedcontainers import SortedList

from .core import PointSet, require_general_position
from .sparse import SparseSymMatrix

__all__ = [
    "SENTINEL",
    "SWEEPS",
    "FrontMember",
    "FrontUpdate",
    "SweepFront",
    "SweepStats",
    "hessian_3d_sweep",
    "sweep_front_insert",
]

SENTINEL = -1
# (l, w, h) per sweep
SWEEPS = ((0, 1, 2), (0, 2, 1), (2, 1, 0))


class FrontMember(NamedTuple):
    l: float
    w: float
    index: int

    @property
    def is_sentinel(self) -> bool:
        return self.index == SENTINEL


@dataclass(frozen=True)
class FrontUpdate:
    """Result of inserting a point: the dominated run and its bracketing neighbours."""

    lower: FrontMember  # largest l below the new point
    dominated: list[FrontMember]
    upper: FrontMember  # largest w below the new point

    @property
    def count(self) -> int:
        return len(self.dominated)


class SweepFront:
    """Mutually non-dominated 2-D points, increasing in l and decreasing in w.

    Two sentinels ``(-inf, ref_w)`` and ``(ref_l, -inf)`` bracket the front so
    every inserted point has both neighbours.
    """

    def __init__(self, ref_l: float, ref_w: float):
        self.ref_l = float(ref_l)
        self.ref_w = float(ref_w)
        self._items = SortedList(
            [FrontMember(-np.inf, self.ref_w, SENTINEL), FrontMember(self.ref_l, -np.inf, SENTINEL)]
        )

    def __len__(self) -> int:
        """Number of non-sentinel members."""
        return len(self._items) - 2

    def members(self) -> list[FrontMember]:
        return list(self._items[1:-1])

    def insert(self, l: float, w: float, index: int) -> FrontUpdate | None:
        """Insert ``(l, w)``; return None (front unchanged) if it is weakly dominated."""
        items = self._items
        pos = items.bisect_left(FrontMember(l, w, SENTINEL))
        lower = items[pos - 1]
        if lower.w <= w:
            return None
        end = pos
        while items[end].w >= w:
            if items[end].l == l and items[end].w == w:
                return None
            end += 1
        dominated = list(items[pos:end])
        if dominated:
            del items[pos:end]
        items.add(FrontMember(l, w, index))
        return FrontUpdate(lower, dominated, items[pos + 1])


def sweep_front_insert(front: SweepFront, p, index: int = 0) -> FrontUpdate | None:
    return front.insert(float(p[0]), float(p[1]), index)


@dataclass
class SweepStats:
    """Per-sweep instrumentation: dominated-run length for each processed point."""

    run_lengths: list[list[int]] = field(default_factory=lambda: [[], [], []])
    skipped: list[int] = field(default_factory=lambda: [0, 0, 0])
    final_front: list[int] = field(default_factory=lambda: [0, 0, 0])

    def removed(self, sweep: int) -> int:
        return sum(self.run_lengths[sweep])


def _emit(store: dict, row: int, col: int, value: float, atol: float) -> None:
    key = (row, col) if row <= col else (col, row)
    old = store.get(key)
    if old is None:
        store[key] = value
    elif abs(old - value) > atol * max(1.0, abs(old)):
        raise ArithmeticError(f"sweeps disagree on entry {key}: {old!r} vs {value!r}")


def hessian_3d_sweep(pointset: PointSet, *, atol: float = 1e-12, stats: SweepStats | None = None) -> SparseSymMatrix:
    """All non-zero entries of the objective-space Hessian for m = 3.

    Dominated points produce no entries.  ``stats``, when given, is filled
    with the per-step dominated-run lengths.
    """
    if pointset.m != 3:
        raise ValueError(f"the sweep needs m = 3, got m = {pointset.m}")
    require_general_position(pointset)
    Y = pointset.points
    r = pointset.reference
    store: dict[tuple[int, int], float] = {}

    for s, (l, w, h) in enumerate(SWEEPS):
        front = SweepFront(r[l], r[w])
        col_l, col_w = Y[:, l].tolist(), Y[:, w].tolist()
        for a in np.argsort(Y[:, h], kind="stable").tolist():
            al, aw = col_l[a], col_w[a]
            upd = front.insert(al, aw, a)
            if upd is None:
                if stats is not None:
                    stats.skipped[s] += 1
                continue
            col = 3 * a + h
            d0, run, dn = upd.lower, upd.dominated, upd.upper
            if stats is not None:
                stats.run_lengths[s].append(len(run))
            _emit(store, 3 * a + l, col, d0.w - aw, atol)
            _emit(store, 3 * a + w, col, dn.l - al, atol)
            if not d0.is_sentinel:
                first_l = run[0].l if run else dn.l
                _emit(store, 3 * d0.index + w, col, -(first_l - al), atol)
            if not dn.is_sentinel:
                last_w = run[-1].w if run else d0.w
                _emit(store, 3 * dn.index + l, col, -(last_w - aw), atol)
            for j, q in enumerate(run):
                prev_w = run[j - 1].w if j else d0.w
                next_l = run[j + 1].l if j + 1 < len(run) else dn.l
                _emit(store, 3 * q.index + l, col, -(prev_w - q.w), atol)
                _emit(store, 3 * q.index + w, col, -(next_l - q.l), atol)
        if stats is not None:
            stats.final_front[s] = len(front)

    return SparseSymMatrix.from_entries(3 * pointset.n, store, atol=np.inf)
