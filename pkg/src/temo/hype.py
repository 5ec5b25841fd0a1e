"""Monte-Carlo hypervolume-contribution fitness and one-shot selection.

Fitness follows the shared-contribution scheme: a sample dominated by c
points credits each of them alpha_c, where alpha folds the 1/c sharing and
the removal-probability ladder for the k pending removals. Selection keeps
the first n rows of a single (rank, -contribution) lexicographic sort. An
exact cell-decomposition oracle covers small instances for testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ndsort import rank_assign
from .tensorops import BIG, lexsort


@dataclass(frozen=True)
class HvEstimateParams:
    """Sampling-box corner, removal parameter k, and sample count."""

    v_ref: np.ndarray
    k: int
    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("need at least one sample")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        object.__setattr__(self, "v_ref", np.asarray(self.v_ref, dtype=np.float64))


def shared_alpha(n1: int, k: int) -> np.ndarray:
    """Contribution weights alpha_1..alpha_k padded with zeros to length n1.

    alpha_c = (1/c) * prod_{l=1}^{c-1} (k-l)/(n1-l); entries past k are zero
    so cells with more than k dominators contribute nothing.
    """
    if not 1 <= k <= n1:
        raise ValueError("k must lie in [1, n1]")
    lam = np.ones(n1)
    if n1 > 1:
        l = np.arange(1, n1)
        lam[1:] = (k - l) / (n1 - l)
    alpha = np.zeros(n1)
    alpha[:k] = np.cumprod(lam[:k]) / np.arange(1, k + 1)
    return alpha


def hv_estimate(
    F: np.ndarray,
    params: HvEstimateParams,
    rng: np.random.Generator,
    sample_block: int = 65536,
) -> np.ndarray:
    """Per-row hypervolume contribution estimated from uniform box samples.

    Samples are drawn from the box between the columnwise minimum and the
    reference point; a boundary sample counts as dominated. Returns zeros
    when the box is degenerate.
    """
    F = np.asarray(F, dtype=np.float64)
    n1 = F.shape[0]
    if not params.k <= n1:
        raise ValueError("k exceeds the number of rows")
    f_l = F.min(axis=0)
    span = params.v_ref - f_l
    if np.any(span <= 0):
        return np.zeros(n1)
    alpha = shared_alpha(n1, params.k)
    contrib = np.zeros(n1)
    remaining = params.s
    while remaining > 0:
        b = min(sample_block, remaining)
        S = f_l + rng.random((b, F.shape[1])) * span
        dominates = np.all(F[:, None, :] <= S[None, :, :], axis=-1)  # n1 x b
        counts = dominates.sum(axis=0)
        weight = np.where(counts > 0, alpha[np.maximum(counts - 1, 0)], 0.0)
        contrib += dominates @ weight
        remaining -= b
    return contrib * np.prod(span) / params.s


def exact_hype_fitness_oracle(
    F: np.ndarray,
    v_ref: np.ndarray,
    k: int,
    moments: bool = False,
) -> np.ndarray | tuple[np.ndarray, np.ndarray]:
    """Exact shared-contribution fitness by cell decomposition (n1<=8, m<=3).

    The coordinate grid induced by the points and the box makes dominance
    constant on every cell, so the fitness integral is a finite sum. With
    ``moments`` also returns the integral of the squared cell weight, from
    which a Monte-Carlo standard error can be derived.
    """
    F = np.asarray(F, dtype=np.float64)
    v_ref = np.asarray(v_ref, dtype=np.float64)
    n1, m = F.shape
    if n1 > 8 or m > 3:
        raise ValueError("oracle is limited to n1 <= 8, m <= 3")
    f_l = F.min(axis=0)
    if np.any(v_ref - f_l <= 0):
        zero = np.zeros(n1)
        return (zero, zero.copy()) if moments else zero
    alpha = shared_alpha(n1, k)
    axes = []
    for a in range(m):
        vals = np.unique(np.concatenate([[f_l[a]], F[:, a], [v_ref[a]]]))
        axes.append(vals[(vals >= f_l[a]) & (vals <= v_ref[a])])
    fitness = np.zeros(n1)
    second = np.zeros(n1)
    for cell in itertools.product(*(range(len(ax) - 1) for ax in axes)):
        lo = np.array([axes[a][cell[a]] for a in range(m)])
        hi = np.array([axes[a][cell[a] + 1] for a in range(m)])
        vol = np.prod(hi - lo)
        dom = np.all(F <= lo, axis=1)
        c = int(dom.sum())
        if c >= 1:
            fitness[dom] += vol * alpha[c - 1]
            second[dom] += vol * alpha[c - 1] ** 2
    return (fitness, second) if moments else fitness


def auto_reference(F: np.ndarray) -> np.ndarray:
    """Columnwise max plus 10% of the columnwise range."""
    mx = F.max(axis=0)
    return mx + 0.1 * (mx - F.min(axis=0))


def environmental_selection(
    X: np.ndarray,
    F: np.ndarray,
    v_ref: np.ndarray | None,
    n: int,
    s: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Keep the first n rows of the (rank, -contribution) lexicographic order.

    k is the number of last-front rows that must go; when the retained
    fronts fit exactly there is nothing to break ties for and estimation is
    skipped.
    """
    X = np.asarray(X, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    if F.shape[0] < n:
        raise ValueError("need at least n rows")
    res = rank_assign(F, n)
    retained = res.r <= res.l
    k = int(retained.sum()) - n
    if k >= 1:
        ref = auto_reference(F) if v_ref is None else np.asarray(v_ref, dtype=np.float64)
        v_hv = hv_estimate(F, HvEstimateParams(ref, k, s), rng)
    else:
        v_hv = np.zeros(F.shape[0])
    d = np.where(retained, v_hv, -BIG)
    keep = lexsort(res.r, -d)[:n]
    return X[keep], F[keep]
