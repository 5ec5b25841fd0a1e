"""Batched non-dominated sorting plus the sequential oracle it must match.

The batched path builds the full dominance matrix once and peels fronts by
repeated masked updates of the dominated-by counts; the number of peeling
passes equals the number of fronts. ``ndsort_oracle`` is the classic
domination-count algorithm kept deliberately loop-based for equivalence
testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RankResult:
    """Non-domination ranks (0 = best front) and the last retained rank l."""

    r: np.ndarray
    l: int


def dominance_matrix(F: np.ndarray, block: int = 2048) -> np.ndarray:
    """N x N mask where entry (i, j) says row i dominates row j.

    Dominance is componentwise <= with at least one strict <; comparisons are
    exact, duplicated rows never dominate each other. Built in row blocks to
    bound the broadcast temporaries.
    """
    F = np.asarray(F, dtype=np.float64)
    if F.ndim != 2 or F.shape[0] < 1:
        raise ValueError("expected a non-empty n x m objective matrix")
    if np.isnan(F).any():
        raise ValueError("objective matrix contains NaN rows")
    n = F.shape[0]
    D = np.empty((n, n), dtype=np.int64)
    for start in range(0, n, block):
        sub = F[start : start + block]
        le = np.all(sub[:, None, :] <= F[None, :, :], axis=-1)
        lt = np.any(sub[:, None, :] < F[None, :, :], axis=-1)
        D[start : start + block] = le & lt
    return D


def rank_assign(F: np.ndarray, n: int) -> RankResult:
    """Assign ranks by batch peeling and locate the last front for size n.

    Each pass ranks every currently undominated individual at once and
    retires its outgoing dominance counts; l is the rank of the n-th best
    individual, so ranks < l underfill n and ranks <= l cover it.
    """
    F = np.asarray(F, dtype=np.float64)
    N = F.shape[0]
    if not 1 <= n <= N:
        raise ValueError(f"population size {n} out of range [1, {N}]")
    D = dominance_matrix(F)
    c = D.sum(axis=0)  # dominated-by counts
    r = np.zeros(N, dtype=np.int64)
    k = 0
    p = c == 0
    while p.any():
        if k >= N:
            raise RuntimeError("front peeling failed to terminate")
        r = np.where(p, k, r)
        c = c - p @ D - p
        k += 1
        p = c == 0
    l = int(np.sort(r)[n - 1])
    return RankResult(r, l)


def ndsort_oracle(F: np.ndarray, n: int) -> RankResult:
    """Sequential domination-count sorting; the reference the batch must equal."""
    F = np.asarray(F, dtype=np.float64)
    N, m = F.shape
    dominated_by = [0] * N
    dominates: list[list[int]] = [[] for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            le = all(F[i, t] <= F[j, t] for t in range(m))
            lt = any(F[i, t] < F[j, t] for t in range(m))
            if le and lt:
                dominates[i].append(j)
            elif all(F[j, t] <= F[i, t] for t in range(m)) and any(
                F[j, t] < F[i, t] for t in range(m)
            ):
                dominated_by[i] += 1
    r = np.zeros(N, dtype=np.int64)
    front = [i for i in range(N) if dominated_by[i] == 0]
    k = 0
    while front:
        nxt = []
        for i in front:
            r[i] = k
            for j in dominates[i]:
                dominated_by[j] -= 1
                if dominated_by[j] == 0:
                    nxt.append(j)
        front = nxt
        k += 1
    l = int(np.sort(r)[n - 1])
    return RankResult(r, l)
