"""Stratified k-fold index partitioning."""

from __future__ import annotations

import numpy as np

from ..domain import MalformedValue, PsaiError
from ..rng import stream


class TooFewPerClass(PsaiError):
    pass


def stratified_kfold(labels, k: int, seed: int) -> list[np.ndarray]:
    """Partition indices into k folds with near-proportional class counts.

    Each class is shuffled with a seed-derived stream and dealt round
    robin; the dealing cursor carries over between classes so overall fold
    sizes also stay within one of each other. Per fold and class the count
    differs from exact proportionality by at most one. Output folds are
    sorted index arrays, deterministic for a fixed seed.
    """
    y = np.asarray(labels)
    if y.ndim != 1:
        raise MalformedValue("labels must be one-dimensional")
    if k < 2:
        raise MalformedValue(f"k must be at least 2, got {k}")
    classes = np.unique(y)
    for cls in classes:
        count = int(np.sum(y == cls))
        if count < k:
            raise TooFewPerClass(
                f"class {cls} has {count} member(s); need at least k={k}"
            )

    rng = stream(seed, "stratified-kfold")
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for cls in classes:
        idx = np.flatnonzero(y == cls)
        idx = idx[rng.permutation(idx.size)]
        for v in idx:
            folds[cursor % k].append(int(v))
            cursor += 1
    return [np.array(sorted(f), dtype=np.intp) for f in folds]
