"""Random forest: bagged CART trees with per-split feature subsampling."""

from __future__ import annotations

import numpy as np

from ..rng import stream
from .tree import DecisionTree


class RandomForest:
    """Majority vote over bootstrapped trees.

    With n_trees=1, bootstrap=False and features_per_split="all" the
    forest degenerates to a plain decision tree.
    """

    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int = 8,
        min_leaf: int = 5,
        bootstrap: bool = True,
        features_per_split: str = "sqrt",
        seed: int = 0,
    ):
        if features_per_split not in ("sqrt", "all"):
            raise ValueError(f"features_per_split must be 'sqrt' or 'all', got {features_per_split!r}")
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.bootstrap = bootstrap
        self.features_per_split = features_per_split
        self.seed = seed
        self.trees_: list[DecisionTree] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RandomForest":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        n, d = X.shape
        mtry = d if self.features_per_split == "all" else max(1, int(round(np.sqrt(d))))

        self.trees_ = []
        for t in range(self.n_trees):
            # independent stream per tree: parallel and serial fits agree
            rng = stream(self.seed, "forest-tree", t)
            if self.bootstrap:
                take = rng.integers(0, n, size=n)
                Xt, yt = X[take], y[take]
            else:
                Xt, yt = X, y
            sampler = None
            if mtry < d:
                sampler = lambda n_feat, r=rng, m=mtry: np.sort(
                    r.choice(n_feat, size=m, replace=False)
                )
            tree = DecisionTree(
                max_depth=self.max_depth, min_leaf=self.min_leaf, feature_sampler=sampler
            )
            self.trees_.append(tree.fit(Xt, yt))
        return self

    def vote_share(self, X: np.ndarray) -> np.ndarray:
        """Fraction of trees voting failure, per row."""
        votes = np.zeros(np.asarray(X).shape[0])
        for tree in self.trees_:
            votes += tree.predict(X)
        return votes / len(self.trees_)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.vote_share(X) >= 0.5).astype(np.int64)
