"""Independent scalar oracles shared by the test modules.

Everything here is deliberately loop-based and written against the problem
definitions directly, not against the library's vectorized code paths.
"""

from __future__ import annotations

import math

import numpy as np


def dtlz_scalar(name: str, x, m: int) -> list[float]:
    """Single-point DTLZ evaluation with plain Python loops."""
    x = [float(v) for v in x]
    d = len(x)
    k = d - m + 1
    xm = x[m - 1 :]

    if name in ("dtlz1", "dtlz3"):
        g = 100.0 * (
            k + sum((v - 0.5) ** 2 - math.cos(20.0 * math.pi * (v - 0.5)) for v in xm)
        )
    elif name in ("dtlz2", "dtlz4", "dtlz5"):
        g = sum((v - 0.5) ** 2 for v in xm)
    elif name == "dtlz6":
        g = sum(v**0.1 for v in xm)
    elif name == "dtlz7":
        g = 1.0 + 9.0 / k * sum(xm)
    else:
        raise ValueError(name)

    if name == "dtlz1":
        f = []
        for i in range(m):
            val = 0.5 * (1.0 + g)
            for j in range(m - 1 - i):
                val *= x[j]
            if i > 0:
                val *= 1.0 - x[m - 1 - i]
            f.append(val)
        return f

    if name == "dtlz7":
        f = x[: m - 1]
        h = m - sum(fi / (1.0 + g) * (1.0 + math.sin(3.0 * math.pi * fi)) for fi in f)
        return f + [(1.0 + g) * h]

    if name in ("dtlz2", "dtlz3"):
        theta = [v * math.pi / 2.0 for v in x[: m - 1]]
    elif name == "dtlz4":
        theta = [(v**100.0) * math.pi / 2.0 for v in x[: m - 1]]
    else:  # dtlz5 / dtlz6
        theta = [x[0] * math.pi / 2.0]
        for v in x[1 : m - 1]:
            theta.append(math.pi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v))
    f = []
    for i in range(m):
        val = 1.0 + g
        for j in range(m - 1 - i):
            val *= math.cos(theta[j])
        if i > 0:
            val *= math.sin(theta[m - 1 - i])
        f.append(val)
    return f


def dominance_loop(F: np.ndarray) -> np.ndarray:
    """Nested-loop Pareto dominance matrix (minimization)."""
    n, m = F.shape
    dom = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i != j:
                if all(F[i, t] <= F[j, t] for t in range(m)) and any(
                    F[i, t] < F[j, t] for t in range(m)
                ):
                    dom[i, j] = 1
    return dom


def igd_loop(F: np.ndarray, Fstar: np.ndarray) -> float:
    total = 0.0
    for fs in Fstar:
        best = math.inf
        for f in F:
            best = min(best, math.dist(fs, f))
        total += best
    return total / len(Fstar)


def hv_grid(F: np.ndarray, ref: np.ndarray, cells_per_axis: int) -> float:
    """Brute-force hypervolume by midpoint counting on a regular grid."""
    F = np.asarray(F, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    m = F.shape[1]
    lo = F.min(axis=0)
    span = ref - lo
    axes = [lo[a] + (np.arange(cells_per_axis) + 0.5) / cells_per_axis * span[a] for a in range(m)]
    mids = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    hit = np.zeros(mids.shape[0], dtype=bool)
    for row in F:
        hit |= np.all(row <= mids, axis=1)
    return float(hit.mean() * np.prod(span))


class ForcedRng:
    """Duck-typed generator returning a constant for every uniform draw."""

    def __init__(self, value: float = 0.5):
        self.value = value

    def random(self, size=None):
        if size is None:
            return self.value
        return np.full(size, self.value)

    def integers(self, low, high=None, size=None):
        lo = 0 if high is None else low
        return np.full(size, lo, dtype=np.int64) if size is not None else lo


class PlannedShuffleRng:
    """Duck-typed generator whose permutation is fixed in advance."""

    def __init__(self, perm: np.ndarray):
        self.perm = np.asarray(perm)

    def permutation(self, n: int) -> np.ndarray:
        assert n == self.perm.size
        return self.perm.copy()
