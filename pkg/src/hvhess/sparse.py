"""Coordinate-format storage for symmetric sparse matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

__all__ = ["AsymmetryError", "SparseSymMatrix"]


class AsymmetryError(ValueError):
    """Two emissions of the same symmetric entry disagree."""


@dataclass(frozen=True, eq=False)
class SparseSymMatrix:
    """Symmetric matrix stored as its upper triangle (``row <= col``).

    Only non-zero values are kept.  ``nnz`` counts the non-zeros of the full
    symmetric matrix, i.e. off-diagonal entries twice.
    """

    shape: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    @classmethod
    def from_entries(cls, size: int, entries: dict[tuple[int, int], float], atol: float = 0.0):
        """Build from ``{(row, col): value}`` holding either or both halves.

        When both ``(a, b)`` and ``(b, a)`` are present they must agree within
        ``atol`` (scaled by the magnitude when it exceeds one); the stored value
        is their mean.
        """
        merged: dict[tuple[int, int], float] = {}
        for (r, c), v in entries.items():
            key = (r, c) if r <= c else (c, r)
            if key in merged and r != c:
                old = merged[key]
                if abs(old - v) > atol * max(1.0, abs(old), abs(v)):
                    raise AsymmetryError(f"entry {key}: {old!r} vs {v!r}")
                merged[key] = 0.5 * (old + v)
            else:
                merged[key] = float(v)
        keys = sorted(k for k, v in merged.items() if v != 0.0)
        rows = np.array([k[0] for k in keys], dtype=np.int64)
        cols = np.array([k[1] for k in keys], dtype=np.int64)
        vals = np.array([merged[k] for k in keys], dtype=float)
        return cls((size, size), rows, cols, vals)

    @classmethod
    def from_dense(cls, a: np.ndarray, atol: float = 0.0) -> "SparseSymMatrix":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got {a.shape}")
        if np.max(np.abs(a - a.T), initial=0.0) > atol * max(1.0, np.max(np.abs(a), initial=0.0)):
            raise AsymmetryError("dense matrix is not symmetric")
        sym = 0.5 * (a + a.T)
        r, c = np.nonzero(np.triu(sym))
        return cls(a.shape, r.astype(np.int64), c.astype(np.int64), sym[r, c])

    @classmethod
    def from_scipy(cls, mat) -> "SparseSymMatrix":
        coo = sp.coo_array(mat)
        coo.sum_duplicates()
        entries = {(int(r), int(c)): float(v) for r, c, v in zip(coo.row, coo.col, coo.data)}
        return cls.from_entries(coo.shape[0], entries, atol=np.inf)

    @property
    def size(self) -> int:
        return self.shape[0]

    @property
    def nnz(self) -> int:
        return int(2 * np.count_nonzero(self.rows != self.cols) + np.count_nonzero(self.rows == self.cols))

    def entries(self) -> list[tuple[int, int, float]]:
        return [(int(r), int(c), float(v)) for r, c, v in zip(self.rows, self.cols, self.values)]

    def full_entries(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Both halves: row, col and value arrays of the symmetric closure."""
        off = self.rows != self.cols
        rows = np.concatenate([self.rows, self.cols[off]])
        cols = np.concatenate([self.cols, self.rows[off]])
        vals = np.concatenate([self.values, self.values[off]])
        return rows, cols, vals

    def to_scipy(self) -> sp.csr_array:
        r, c, v = self.full_entries()
        return sp.csr_array((v, (r, c)), shape=self.shape)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        r, c, v = self.full_entries()
        out[r, c] = v
        return out

    def get(self, row: int, col: int) -> float:
        a, b = (row, col) if row <= col else (col, row)
        hit = np.flatnonzero((self.rows == a) & (self.cols == b))
        return float(self.values[hit[0]]) if hit.size else 0.0

    def support(self) -> set[tuple[int, int]]:
        r, c, _ = self.full_entries()
        return set(zip(r.tolist(), c.tolist()))

    def __repr__(self) -> str:
        return f"SparseSymMatrix(shape={self.shape}, nnz={self.nnz})"
