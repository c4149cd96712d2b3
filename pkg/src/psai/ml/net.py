"""One-hidden-layer logistic network trained by full-batch gradient descent.

Parameters live in a flat (W1, b1, W2, b2) tuple so the loss and gradient
functions can be checked against finite differences directly.
"""

from __future__ import annotations

import numpy as np

Params = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def init_params(n_features: int, hidden_units: int, rng: np.random.Generator) -> Params:
    w1 = rng.normal(0.0, 1.0, size=(n_features, hidden_units)) / np.sqrt(n_features)
    b1 = np.zeros(hidden_units)
    w2 = rng.normal(0.0, 1.0, size=(hidden_units, 1)) / np.sqrt(hidden_units)
    b2 = np.zeros(1)
    return w1, b1, w2, b2


def _forward(params: Params, X: np.ndarray):
    w1, b1, w2, b2 = params
    a1 = sigmoid(X @ w1 + b1)
    z2 = (a1 @ w2 + b2).ravel()
    return a1, z2


def net_loss(params: Params, X: np.ndarray, y: np.ndarray) -> float:
    """Mean binary cross-entropy, in the overflow-safe softplus form."""
    _, z2 = _forward(params, X)
    softplus = np.maximum(z2, 0.0) + np.log1p(np.exp(-np.abs(z2)))
    return float(np.mean(softplus - y * z2))


def net_gradients(params: Params, X: np.ndarray, y: np.ndarray) -> Params:
    """Analytic gradient of net_loss with respect to every parameter."""
    w1, b1, w2, b2 = params
    a1, z2 = _forward(params, X)
    n = X.shape[0]
    dz2 = (sigmoid(z2) - y) / n  # (n,)
    dw2 = a1.T @ dz2[:, None]
    db2 = np.array([dz2.sum()])
    da1 = dz2[:, None] @ w2.T
    dz1 = da1 * a1 * (1.0 - a1)
    dw1 = X.T @ dz1
    db1 = dz1.sum(axis=0)
    return dw1, db1, dw2, db2


class NeuralNet:
    def __init__(self, hidden_units: int = 8, learning_rate: float = 0.1, epochs: int = 500):
        self.hidden_units = hidden_units
        self.learning_rate = learning_rate
        self.epochs = epochs

    def fit(self, X: np.ndarray, y: np.ndarray, rng: np.random.Generator) -> "NeuralNet":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        params = init_params(X.shape[1], self.hidden_units, rng)
        lr = self.learning_rate
        for _ in range(self.epochs):
            grads = net_gradients(params, X, y)
            params = tuple(p - lr * g for p, g in zip(params, grads))
        self.params_ = params
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        _, z2 = _forward(self.params_, np.asarray(X, dtype=float))
        return sigmoid(z2)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.int64)
