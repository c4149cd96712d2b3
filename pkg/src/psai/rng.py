"""Deterministic random-stream derivation.

Every stochastic component gets its own generator keyed by a tuple like
(seed, "forest", fold, tree). Streams are independent of scheduling, so
parallel and serial runs of the same computation agree exactly.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _to_entropy(part: int | str) -> int:
    if isinstance(part, bool):
        raise TypeError("bool is not a valid stream key")
    if isinstance(part, int):
        return part & _MASK64
    digest = hashlib.sha256(str(part).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream(*parts: int | str) -> np.random.Generator:
    """A generator whose state depends only on the key tuple."""
    entropy = [_to_entropy(p) for p in parts]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def derive_seed(*parts: int | str) -> int:
    """A 63-bit seed derived from the key tuple (for nested components)."""
    h = hashlib.sha256()
    for p in parts:
        h.update(str(_to_entropy(p)).encode("ascii"))
        h.update(b"|")
    return int.from_bytes(h.digest()[:8], "big") >> 1
