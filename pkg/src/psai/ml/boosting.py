"""AdaBoost over depth-1 decision stumps.

The stump search presorts every feature once per fit and then evaluates
all (threshold, polarity) candidates per round with cumulative sums of the
signed sample weights, so 50 rounds cost 50 weight reorderings rather than
50 sorts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = 1e-12


@dataclass(frozen=True, slots=True)
class Stump:
    """Threshold rule: predict left_sign where x < threshold, else -left_sign."""

    feature: int
    threshold: float
    left_sign: float

    def predict(self, X: np.ndarray) -> np.ndarray:
        x = np.asarray(X, dtype=float)[:, self.feature]
        return np.where(x < self.threshold, self.left_sign, -self.left_sign)


def _fit_stump(xs: np.ndarray, order: np.ndarray, signs: np.ndarray, w: np.ndarray) -> Stump:
    """Minimum-weighted-error stump given presorted feature columns.

    xs/order hold each column's sorted values and the sample indices that
    produced them. Candidate c puts the first c sorted samples on the left:
    c = 0 is a constant predictor (threshold -inf) and c >= 1 needs a value
    gap between sorted positions c-1 and c. Ties prefer the lower feature
    index, then the lower threshold, then a left sign of -1.
    """
    n, d = xs.shape
    sw = (w * signs)[order]  # signed weights in each column's sorted order
    zeros = np.zeros((1, d))
    cpos = np.vstack([zeros, np.cumsum(np.where(sw > 0, sw, 0.0), axis=0)])
    cneg = np.vstack([zeros, np.cumsum(np.where(sw < 0, -sw, 0.0), axis=0)])
    total_pos = cpos[-1, :][None, :]
    total_neg = cneg[-1, :][None, :]
    cpos = cpos[:n, :]  # mass on the left of candidate c = 0..n-1
    cneg = cneg[:n, :]

    # left -1 / right +1 errs on positives left and negatives right; the
    # flipped polarity errs on the complement
    err_lneg = cpos + (total_neg - cneg)
    err_lpos = cneg + (total_pos - cpos)

    valid = np.ones((n, d), dtype=bool)
    valid[1:, :] = xs[:-1, :] < xs[1:, :]
    err_lneg = np.where(valid, err_lneg, np.inf)
    err_lpos = np.where(valid, err_lpos, np.inf)

    errs = np.stack([err_lneg.T, err_lpos.T], axis=-1)  # (d, n, 2)
    flat = int(np.argmin(errs))
    f, rest = divmod(flat, n * 2)
    c, pol = divmod(rest, 2)
    threshold = -np.inf if c == 0 else 0.5 * (xs[c - 1, f] + xs[c, f])
    return Stump(feature=f, threshold=float(threshold), left_sign=-1.0 if pol == 0 else 1.0)


class AdaBoost:
    def __init__(self, rounds: int = 50):
        self.rounds = rounds
        self.stumps_: list[Stump] = []
        self.alphas_: list[float] = []
        #: post-normalization sample-weight sums, one per executed round
        self.weight_sums_: list[float] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "AdaBoost":
        X = np.asarray(X, dtype=float)
        signs = np.where(np.asarray(y) == 1, 1.0, -1.0)
        n = X.shape[0]
        order = np.argsort(X, axis=0, kind="stable")
        xs = np.take_along_axis(X, order, axis=0)

        w = np.full(n, 1.0 / n)
        self.stumps_, self.alphas_, self.weight_sums_ = [], [], []
        for _ in range(self.rounds):
            stump = _fit_stump(xs, order, signs, w)
            pred = stump.predict(X)
            eps = float(np.sum(w[pred != signs]))
            eps = min(max(eps, _EPS), 1.0 - _EPS)
            alpha = 0.5 * np.log((1.0 - eps) / eps)
            self.stumps_.append(stump)
            self.alphas_.append(float(alpha))
            w = w * np.exp(-alpha * signs * pred)
            w /= w.sum()
            self.weight_sums_.append(float(w.sum()))
            if eps <= _EPS:
                break
        return self

    def decision(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        margin = np.zeros(X.shape[0])
        for alpha, stump in zip(self.alphas_, self.stumps_):
            margin += alpha * stump.predict(X)
        return margin

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.decision(X) >= 0.0).astype(np.int64)
