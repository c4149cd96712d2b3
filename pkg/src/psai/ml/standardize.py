"""Feature standardization with training-fold statistics.

Zero-variance columns carry no information within the fold (the constant
course-level attributes always land here), so they are dropped rather than
producing divide-by-zero; their names are kept as model metadata.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray
    keep: np.ndarray
    dropped_features: tuple[str, ...]

    def apply(self, X: np.ndarray) -> np.ndarray:
        return (X[:, self.keep] - self.mean) / self.std


def fit_standardizer(X: np.ndarray, feature_names: tuple[str, ...]) -> Standardizer:
    std = X.std(axis=0)
    keep = std > _VARIANCE_FLOOR
    dropped = tuple(name for name, k in zip(feature_names, keep) if not k)
    return Standardizer(
        mean=X[:, keep].mean(axis=0),
        std=std[keep],
        keep=keep,
        dropped_features=dropped,
    )
