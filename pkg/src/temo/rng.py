"""Splittable random streams for reproducible, order-independent sampling.

A stream is identified by a 64-bit seed plus a hierarchical path of child
keys. Splitting derives statistically independent substreams; the same
(seed, path) always yields the same draws, which is what makes whole runs
replayable regardless of how work is batched. Streams are backed by the
counter-based Philox generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream addressed by (seed, path)."""

    seed: int
    path: tuple[int, ...] = field(default=())

    def split(self, key: int) -> "RngStream":
        """Derive the child stream at ``key``; independent of its siblings."""
        return RngStream(self.seed, self.path + (int(key),))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(self.seed, spawn_key=self.path)
        return np.random.Generator(np.random.Philox(seq))
