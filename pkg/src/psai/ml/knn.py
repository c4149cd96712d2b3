"""k-nearest-neighbors on (already standardized) features."""

from __future__ import annotations

import numpy as np


class KNearestNeighbors:
    """Euclidean kNN; distance ties resolve toward the lower training row index."""

    def __init__(self, n_neighbors: int = 5):
        self.n_neighbors = n_neighbors

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNearestNeighbors":
        self.X_ = np.asarray(X, dtype=float)
        self.y_ = np.asarray(y)
        if self.X_.shape[0] == 0:
            raise ValueError("knn needs at least one training row")
        return self

    def vote_share(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.shape[0] == 0:
            return np.empty(0)
        # squared distances via the dot-product expansion; identical training
        # rows produce bitwise-equal entries, so the stable argsort below
        # implements the lower-index tie rule
        d2 = (
            np.sum(X * X, axis=1)[:, None]
            + np.sum(self.X_ * self.X_, axis=1)[None, :]
            - 2.0 * (X @ self.X_.T)
        )
        k = min(self.n_neighbors, self.X_.shape[0])
        nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
        return self.y_[nearest].mean(axis=1)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.vote_share(X) >= 0.5).astype(np.int64)
