"""Linear SVM trained with Pegasos-style stochastic subgradient descent.

This is a deliberately small linear variant: hinge loss, L2 penalty,
learning rate 1/(lambda*t) and projection onto the ball of radius
1/sqrt(lambda). The bias rides along as an appended constant feature so a
single weight vector carries the whole model.
"""

from __future__ import annotations

import numpy as np


class LinearSVM:
    def __init__(self, reg_lambda: float = 1e-3, epochs: int = 20):
        self.reg_lambda = reg_lambda
        self.epochs = epochs

    def fit(self, X: np.ndarray, y: np.ndarray, rng: np.random.Generator) -> "LinearSVM":
        X = np.asarray(X, dtype=float)
        signs = np.where(np.asarray(y) == 1, 1.0, -1.0)
        n = X.shape[0]
        Xb = np.hstack([X, np.ones((n, 1))])
        w = np.zeros(Xb.shape[1])
        lam = self.reg_lambda
        radius = 1.0 / np.sqrt(lam)

        t = 0
        for _ in range(self.epochs):
            for i in rng.permutation(n):
                t += 1
                eta = 1.0 / (lam * t)
                margin = signs[i] * (Xb[i] @ w)
                w *= 1.0 - eta * lam
                if margin < 1.0:
                    w += (eta * signs[i]) * Xb[i]
                norm = np.sqrt(w @ w)
                if norm > radius:
                    w *= radius / norm
        self.w_ = w
        return self

    def decision(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return X @ self.w_[:-1] + self.w_[-1]

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.decision(X) >= 0.0).astype(np.int64)
