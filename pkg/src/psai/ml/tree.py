"""CART decision tree (Gini impurity) for binary labels.

Split search is vectorized across the candidate features of a node: sort
each column once, then prefix sums of the positive labels give every
candidate's weighted Gini in one pass. Ties are broken toward the lowest
feature index, then the lowest threshold, so fitting is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass
class _Node:
    n_samples: int
    prob: float  # positive fraction at this node
    feature: int = -1
    threshold: float = 0.0
    left: Optional["_Node"] = None
    right: Optional["_Node"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _best_split(Xn: np.ndarray, yn: np.ndarray, min_leaf: int):
    """Best (feature, threshold) by weighted Gini, or None.

    Candidates sit between distinct consecutive sorted values with at
    least min_leaf samples on each side. Returned feature index is local
    to Xn's columns.
    """
    n, n_feat = Xn.shape
    if n < 2 * min_leaf:
        return None
    order = np.argsort(Xn, axis=0, kind="stable")
    xs = np.take_along_axis(Xn, order, axis=0)
    pos = np.cumsum(yn[order], axis=0, dtype=np.float64)

    left_n = np.arange(1, n, dtype=np.float64)[:, None]
    right_n = n - left_n
    left_pos = pos[:-1, :]
    right_pos = pos[-1, :][None, :] - left_pos
    # weighted Gini up to the constant factor 2/n
    cost = left_pos * (left_n - left_pos) / left_n + right_pos * (right_n - right_pos) / right_n
    valid = (xs[:-1, :] < xs[1:, :]) & (left_n >= min_leaf) & (right_n >= min_leaf)
    cost = np.where(valid, cost, np.inf)

    flat = int(np.argmin(cost.T))  # feature-major: ties prefer low feature, low threshold
    f, j = divmod(flat, n - 1)
    if not np.isfinite(cost[j, f]):
        return None
    return f, 0.5 * (xs[j, f] + xs[j + 1, f])


class DecisionTree:
    """Binary CART classifier; rows go left when value < threshold."""

    def __init__(
        self,
        max_depth: int = 8,
        min_leaf: int = 5,
        feature_sampler: Callable[[int], np.ndarray] | None = None,
    ):
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.feature_sampler = feature_sampler
        self.root_: _Node | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "DecisionTree":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        self.n_features_ = X.shape[1]
        self.root_ = self._grow(X, y, np.arange(X.shape[0]), depth=0)
        return self

    def _grow(self, X: np.ndarray, y: np.ndarray, idx: np.ndarray, depth: int) -> _Node:
        n = idx.size
        n_pos = int(y[idx].sum())
        node = _Node(n_samples=n, prob=n_pos / n)
        if depth >= self.max_depth or n_pos == 0 or n_pos == n:
            return node

        if self.feature_sampler is not None:
            feats = np.asarray(self.feature_sampler(self.n_features_))
        else:
            feats = np.arange(self.n_features_)
        split = _best_split(X[np.ix_(idx, feats)], y[idx], self.min_leaf)
        if split is None:
            return node

        local_f, threshold = split
        node.feature = int(feats[local_f])
        node.threshold = float(threshold)
        mask = X[idx, node.feature] < node.threshold
        node.left = self._grow(X, y, idx[mask], depth + 1)
        node.right = self._grow(X, y, idx[~mask], depth + 1)
        return node

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        self._route(self.root_, X, np.arange(X.shape[0]), out)
        return out

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.int64)

    def _route(self, node: _Node, X: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
        if node.is_leaf or idx.size == 0:
            out[idx] = node.prob
            return
        mask = X[idx, node.feature] < node.threshold
        self._route(node.left, X, idx[mask], out)
        self._route(node.right, X, idx[~mask], out)

    def leaves(self) -> list[_Node]:
        acc: list[_Node] = []
        stack = [self.root_]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                acc.append(node)
            else:
                stack.extend((node.left, node.right))
        return acc
