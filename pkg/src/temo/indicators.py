"""Quality indicators: IGD, hypervolume, and expected utility.

Hypervolume is exact for two and three objectives (sweep / slab
decomposition of the union of boxes); beyond that it falls back to a
seeded Monte-Carlo estimate and the result should be read as one.
All indicators assume minimization with the reference above the front,
except where a maximization flag says otherwise.
"""

from __future__ import annotations

import numpy as np

from .directions import DirectionSet

_MC_SAMPLES = 1_000_000


def igd(F: np.ndarray, Fstar: np.ndarray) -> float:
    """Mean distance from each reference-front point to its nearest solution."""
    F = np.asarray(F, dtype=np.float64)
    Fstar = np.asarray(Fstar, dtype=np.float64)
    if F.size == 0 or Fstar.size == 0:
        raise ValueError("igd needs non-empty inputs")
    diff = Fstar[:, None, :] - F[None, :, :]
    return float(np.sqrt(np.sum(diff * diff, axis=-1)).min(axis=1).mean())


def _hv_2d(F: np.ndarray, ref: np.ndarray) -> float:
    """Exact 2-objective union-of-boxes volume by a left-to-right sweep."""
    if F.shape[0] == 0:
        return 0.0
    pts = F[np.lexsort((F[:, 1], F[:, 0]))]
    xs = np.r_[pts[:, 0], ref[0]]
    best_y = np.minimum.accumulate(pts[:, 1])
    return float(np.sum((xs[1:] - xs[:-1]) * (ref[1] - best_y)))


def _hv_3d(F: np.ndarray, ref: np.ndarray) -> float:
    """Exact 3-objective volume: 2-D sweeps over slabs of the third axis."""
    zs = np.unique(np.r_[F[:, 2], ref[2]])
    total = 0.0
    for z_lo, z_hi in zip(zs[:-1], zs[1:]):
        active = F[F[:, 2] <= z_lo]
        if active.shape[0]:
            total += _hv_2d(active[:, :2], ref[:2]) * (z_hi - z_lo)
    return total


def hv_indicator(F: np.ndarray, ref: np.ndarray, rng: np.random.Generator | None = None) -> float:
    """Volume dominated by F and bounded by ``ref``.

    Rows with any coordinate at or beyond the reference are discarded first.
    Exact for m <= 3; for m > 3 the value is a Monte-Carlo estimate over
    10^6 box samples (seeded, so deterministic unless an rng is supplied).
    """
    F = np.asarray(F, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    F = F[np.all(F < ref, axis=1)]
    if F.shape[0] == 0:
        return 0.0
    m = F.shape[1]
    if m == 2:
        return _hv_2d(F, ref)
    if m == 3:
        return _hv_3d(F, ref)
    rng = np.random.default_rng(0) if rng is None else rng
    lo = F.min(axis=0)
    span = ref - lo
    S = lo + rng.random((_MC_SAMPLES, m)) * span
    hits = np.zeros(_MC_SAMPLES, dtype=bool)
    for row in F:
        hits |= np.all(row <= S, axis=1)
    return float(hits.mean() * np.prod(span))


def eu(
    F: np.ndarray,
    W: DirectionSet | np.ndarray,
    maximize: bool = False,
    literal: bool = False,
) -> float:
    """Expected utility of a solution set under a set of weight vectors.

    Default reading: for each weight row take the best weighted utility any
    solution achieves, then average over weight rows; utility is -f when
    minimizing. The alternative per-objective reading (best single weighted
    objective per solution, averaged over solutions and weights) is behind
    ``literal``.
    """
    F = np.asarray(F, dtype=np.float64)
    weights = W.W if isinstance(W, DirectionSet) else np.asarray(W, dtype=np.float64)
    if F.size == 0 or weights.size == 0:
        raise ValueError("eu needs non-empty inputs")
    U = F if maximize else -F
    if literal:
        per_solution = (weights[:, None, :] * U[None, :, :]).max(axis=2)  # r x n
        return float(per_solution.mean())
    scores = weights @ U.T  # r x n
    return float(scores.max(axis=1).mean())
