"""Vector-valued objective functions with first and second derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["ObjectiveModel"]


@dataclass(frozen=True)
class ObjectiveModel:
    """Bundle of ``f: R^d -> R^m`` with its Jacobian and Hessians.

    ``evaluate(x)`` returns shape ``(m,)``, ``jacobian(x)`` shape ``(m, d)`` and
    ``hessians(x)`` shape ``(m, d, d)`` (one symmetric block per objective).
    """

    m: int
    d: int
    evaluate: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    hessians: Callable[[np.ndarray], np.ndarray]
    name: str = "model"
    spec: object = None

    def _rows(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            if X.size % self.d:
                raise ValueError(f"vector of length {X.size} is not divisible by d={self.d}")
            X = X.reshape(-1, self.d)
        if X.ndim != 2 or X.shape[1] != self.d:
            raise ValueError(f"decision points must have shape (n, {self.d}), got {X.shape}")
        return X

    def objectives(self, X) -> np.ndarray:
        X = self._rows(X)
        return np.array([self._check(self.evaluate(x), (self.m,)) for x in X]).reshape(-1, self.m)

    def jacobians(self, X) -> np.ndarray:
        X = self._rows(X)
        return np.array([self._check(self.jacobian(x), (self.m, self.d)) for x in X]).reshape(
            -1, self.m, self.d
        )

    def hessian_blocks(self, X) -> np.ndarray:
        X = self._rows(X)
        out = np.array([self._check(self.hessians(x), (self.m, self.d, self.d)) for x in X])
        return out.reshape(-1, self.m, self.d, self.d)

    @staticmethod
    def _check(value, shape) -> np.ndarray:
        a = np.asarray(value, dtype=float)
        if a.shape != shape:
            raise ValueError(f"model returned shape {a.shape}, expected {shape}")
        return a
