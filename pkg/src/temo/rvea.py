"""Angle-penalized-distance environmental selection.

Individuals are partitioned by smallest angle to the reference directions;
within each partition the winner minimizes norm times an angular penalty
that tightens from 0 to full strength as the generation budget is spent.
Directions with empty partitions contribute no elite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .directions import DirectionSet


@dataclass(frozen=True)
class ApdParams:
    """Penalty growth exponent and generation progress t / t_max."""

    alpha: float
    t: int
    t_max: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.t_max < 1 or not 0 <= self.t <= self.t_max:
            raise ValueError("need 0 <= t <= t_max with t_max >= 1")


def apd_select(
    X: np.ndarray,
    F: np.ndarray,
    V: DirectionSet,
    params: ApdParams,
) -> tuple[np.ndarray, np.ndarray]:
    """One elite per non-empty direction partition, by smallest APD."""
    X = np.asarray(X, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    n, m = F.shape
    Vn = V.W / np.linalg.norm(V.W, axis=1, keepdims=True)
    Fp = F - F.min(axis=0)
    norms = np.linalg.norm(Fp, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = (Fp @ Vn.T) / norms[:, None]
    cos[norms == 0] = 0.0  # the ideal-point row: zero norm, zero APD anyway
    theta = np.arccos(np.clip(cos, -1.0, 1.0))
    part = np.argmin(theta, axis=1)

    r = V.count
    if r == 1:
        gamma = np.array([np.pi / 2.0])
    else:
        vv = np.arccos(np.clip(Vn @ Vn.T, -1.0, 1.0))
        np.fill_diagonal(vv, np.pi)
        gamma = vv.min(axis=1)

    progress = (params.t / params.t_max) ** params.alpha
    penalty = 1.0 + m * progress * theta[np.arange(n), part] / gamma[part]
    apd = penalty * norms

    order = np.lexsort((np.arange(n), apd, part))
    part_sorted = part[order]
    first = np.r_[True, part_sorted[1:] != part_sorted[:-1]]
    winners = order[first]
    return X[winners], F[winners]
