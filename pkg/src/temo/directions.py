"""Reference / weight direction sets and neighborhood tables.

The simplex-lattice construction enumerates all compositions of H into m
non-negative integer parts and divides by H, so every row sums to one by
rational construction. Neighborhoods are Euclidean nearest rows with ties
broken by index, self always first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .tensorops import argsort_stable

_MAX_LATTICE = 10_000_000


@dataclass(frozen=True)
class DirectionSet:
    """r x m matrix of directions; rows sum to 1 (simplex) or have unit norm."""

    W: np.ndarray
    kind: str  # "simplex" | "unit-norm"

    def __post_init__(self):
        W = np.asarray(self.W, dtype=np.float64)
        if W.ndim != 2:
            raise ValueError("direction set must be a 2-d matrix")
        if np.any(np.all(W == 0, axis=1)):
            raise ValueError("direction set contains an all-zero row")
        if np.unique(W, axis=0).shape[0] != W.shape[0]:
            raise ValueError("direction set contains duplicate rows")
        object.__setattr__(self, "W", W)

    @property
    def count(self) -> int:
        return self.W.shape[0]

    @property
    def m(self) -> int:
        return self.W.shape[1]

    def unit_norm(self) -> "DirectionSet":
        """Copy with rows rescaled to unit Euclidean norm."""
        norms = np.linalg.norm(self.W, axis=1, keepdims=True)
        return DirectionSet(self.W / norms, "unit-norm")


@dataclass(frozen=True)
class NeighborTable:
    """Per-row indices of the T nearest directions (self included, first)."""

    I_nb: np.ndarray

    @property
    def T(self) -> int:
        return self.I_nb.shape[1]


def simplex_lattice(m: int, H: int) -> np.ndarray:
    """All compositions of H into m parts, divided by H; C(H+m-1, m-1) rows."""
    if m < 2 or H < 1:
        raise ValueError("need m >= 2 and H >= 1")
    if math.comb(H + m - 1, m - 1) > _MAX_LATTICE:
        raise ValueError(f"lattice size C({H + m - 1},{m - 1}) exceeds {_MAX_LATTICE}")
    rows = []
    for cuts in itertools.combinations(range(H + m - 1), m - 1):
        prev = -1
        parts = []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(H + m - 2 - prev)
        rows.append(parts)
    W = np.asarray(rows, dtype=np.float64) / H
    # pin the last column to the exact complement so each row sums to 1.0
    W[:, -1] = 1.0 - W[:, :-1].sum(axis=1)
    return W


def das_dennis(m: int, H: int) -> DirectionSet:
    """Simplex-lattice weight set with H divisions per objective."""
    return DirectionSet(simplex_lattice(m, H), "simplex")


def lattice_size(m: int, H: int) -> int:
    return math.comb(H + m - 1, m - 1)


def largest_h_for(count: int, m: int) -> int:
    """Largest H whose lattice has at most ``count`` points."""
    if count < m:
        raise ValueError("count must be at least m")
    h = 1
    while lattice_size(m, h + 1) <= count:
        h += 1
    return h


def neighbors(ds: DirectionSet, T: int) -> NeighborTable:
    """T nearest rows per row by Euclidean distance, ties by lower index."""
    r = ds.count
    if not 1 <= T <= r:
        raise ValueError(f"neighborhood size {T} out of range [1, {r}]")
    diff = ds.W[:, None, :] - ds.W[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    table = np.empty((r, T), dtype=np.int64)
    for i in range(r):
        table[i] = argsort_stable(dist[i])[:T]
    return NeighborTable(table)
