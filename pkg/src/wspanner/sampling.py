"""Seeded Bernoulli vertex sampling.

Each sampled set is drawn from its own counter-based stream keyed by
``(seed, label)``: vertex ``v`` is kept iff the ``v``-th uniform of that
stream is below ``p``.  Streams with different labels never interact, so a
builder can draw sets in any order and still get the same sets.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["SampleConfig", "sample_vertices", "rate_heavy_hit", "rate_path_hit", "stream"]


@dataclass(frozen=True)
class SampleConfig:
    p: float
    seed: int
    label: str

    def __post_init__(self):
        if math.isnan(self.p):
            raise ValueError("sampling probability is NaN")
        object.__setattr__(self, "p", min(1.0, max(0.0, float(self.p))))
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def stream(seed: int, label: str) -> np.random.Generator:
    """Philox generator keyed by a hash of ``(seed, label)``."""
    h = hashlib.blake2b(digest_size=16, person=b"wspanner-sample")
    h.update(int(seed).to_bytes(8, "little"))
    h.update(label.encode("utf-8"))
    key = np.frombuffer(h.digest(), dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_vertices(n: int, cfg: SampleConfig) -> np.ndarray:
    """Sorted array of sampled vertex ids in ``0..n-1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if cfg.p <= 0.0 or n == 0:
        return np.empty(0, dtype=np.int64)
    if cfg.p >= 1.0:
        return np.arange(n, dtype=np.int64)
    u = stream(cfg.seed, cfg.label).random(n)
    return np.flatnonzero(u < cfg.p).astype(np.int64)


def rate_heavy_hit(n: int, d: float) -> float:
    """``min(1, 2 ln n / d)``: hits every closed neighborhood of size >= d w.h.p."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    return min(1.0, 2.0 * math.log(n) / d)


def rate_path_hit(n: int, d: float, l: float) -> float:
    """``min(1, ln n / (d l))``: hits a path with ``l`` missing edges w.h.p."""
    if n < 2 or d < 1 or l < 1:
        raise ValueError("need n >= 2, d >= 1 and l >= 1")
    return min(1.0, math.log(n) / (d * l))
