"""Reproducible random streams.

A stream is a pure function of (seed, index): the same pair always
yields the same generator state, regardless of which worker or thread
asks for it.  Monte Carlo code assigns stream index i to sample i, so
results are identical for any degree of parallelism.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngStream:
    seed: int
    index: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.index,))
        return np.random.Generator(np.random.Philox(ss))

    def substream(self, index: int) -> "RngStream":
        return RngStream(self.seed, index)


def as_generator(rng) -> np.random.Generator:
    """Accepts an RngStream, a Generator, or a plain integer seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, (int, np.integer)):
        return RngStream(int(rng)).generator()
    raise TypeError(f"cannot interpret {type(rng).__name__} as a random source")
