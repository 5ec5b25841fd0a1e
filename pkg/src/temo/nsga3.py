"""Batched NSGA-III environmental selection.

The pipeline ranks the merged population, normalizes the retained fronts
via ideal point and intercepts, associates every retained individual with
its perpendicular-nearest reference direction, and then fills empty niches
in batched rounds: each round simultaneously promotes, for every currently
empty direction, its closest last-front member. Over- or under-selection
left by the rounds is repaired by rank updates so exactly n survive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .directions import DirectionSet
from .ndsort import rank_assign
from .tensorops import BIG

_ASF_EPS = 1e-6
_COND_LIMIT = 1e8
_INTERCEPT_FLOOR = 1e-10


@dataclass(frozen=True)
class NormalizedObjectives:
    """Ideal-shifted, intercept-scaled objectives (NaN rows pass through)."""

    Fp: np.ndarray
    ideal: np.ndarray
    intercepts: np.ndarray


@dataclass(frozen=True)
class AssociationResult:
    """Per-individual nearest direction index and perpendicular distance."""

    pi: np.ndarray
    dist: np.ndarray


@dataclass(frozen=True)
class NicheState:
    """Niche occupancy: counts over retained fronts, over the last front, total."""

    rho: np.ndarray
    rho_l: np.ndarray
    n_s: int


@dataclass(frozen=True)
class NicheSelection:
    """Rank vector after niche filling, promotion order, and running total."""

    rank: np.ndarray
    promoted: np.ndarray
    n_selected: int


def normalize(F: np.ndarray) -> NormalizedObjectives:
    """Shift by the ideal point and scale by hyperplane intercepts.

    Rows already excluded from selection must arrive as NaN. Extreme rows
    are found by axis-weight achievement scalarization; when they span the
    objective space the intercepts solve the hyperplane system, otherwise
    (or when the solve is ill-conditioned or gives a degenerate intercept)
    the columnwise maximum of the unshifted objectives is used instead.
    """
    F = np.asarray(F, dtype=np.float64)
    n, m = F.shape
    if np.all(np.isnan(F), axis=0).any():
        raise ValueError("a column is all-NaN: no retained rows to normalize")
    ideal = np.nanmin(F, axis=0)
    shifted = F - ideal

    weights = np.maximum(np.eye(m), _ASF_EPS)
    extreme_idx = np.empty(m, dtype=np.int64)
    for axis in range(m):
        score = np.max(shifted / weights[axis], axis=1)
        extreme_idx[axis] = np.argmin(np.where(np.isnan(score), BIG, score))
    E = shifted[extreme_idx]

    intercepts = None
    if np.linalg.matrix_rank(E) == m and np.linalg.cond(E) <= _COND_LIMIT:
        plane = np.linalg.solve(E, np.ones(m))
        with np.errstate(divide="ignore"):
            candidate = 1.0 / plane
        if np.all(candidate > _INTERCEPT_FLOOR):
            intercepts = candidate
    if intercepts is None:
        intercepts = np.maximum(np.nanmax(F, axis=0), _INTERCEPT_FLOOR)
    return NormalizedObjectives(shifted / intercepts, ideal, intercepts)


def associate(Fp: np.ndarray, R: DirectionSet) -> AssociationResult:
    """Nearest reference direction per row by perpendicular distance.

    Distance is ||f|| * sqrt(1 - cos^2) against each direction; a zero-norm
    row sits on every direction, so it gets distance 0 and the lowest index.
    NaN rows keep NaN distances and an arbitrary (unused) index.
    """
    Fp = np.asarray(Fp, dtype=np.float64)
    W = R.W
    norm_f = np.linalg.norm(Fp, axis=1)
    norm_w = np.linalg.norm(W, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = (Fp @ W.T) / (norm_f[:, None] * norm_w[None, :])
        D = norm_f[:, None] * np.sqrt(np.clip(1.0 - cos * cos, 0.0, None))
    D[norm_f == 0] = 0.0
    nan_row = np.isnan(norm_f)
    masked = np.where(np.isnan(D), BIG, D)
    pi = np.argmin(masked, axis=1)
    dist = masked[np.arange(Fp.shape[0]), pi]
    dist[nan_row] = np.nan
    return AssociationResult(pi, dist)


def niche_counts(r: np.ndarray, pi: np.ndarray, l: int, n_r: int) -> NicheState:
    """Occupancy per direction, split into retained fronts (rank < l) and last front."""
    rho = np.bincount(pi[r < l], minlength=n_r)
    rho_l = np.bincount(pi[r == l], minlength=n_r)
    return NicheState(rho, rho_l, int(rho.sum()))


def niche_select(
    state: NicheState,
    r: np.ndarray,
    pi: np.ndarray,
    dist: np.ndarray,
    l: int,
    n: int,
) -> NicheSelection:
    """Fill empty niches in batched rounds until none can be filled.

    Every round promotes, for each direction with occupancy zero, the
    last-front member associated to it with the smallest distance (ties by
    index). Should two directions ever claim one individual, the lower
    direction index wins. Promotion order is recorded so over-selection can
    be undone most-recent-first.
    """
    rank = np.asarray(r).copy()
    rho = state.rho.copy()
    promoted: list[int] = []
    while True:
        cand = np.flatnonzero(rank == l)
        if cand.size == 0:
            break
        # per-direction closest candidate: sort by (direction, distance, index)
        order = np.lexsort((cand, dist[cand], pi[cand]))
        dirs_sorted = pi[cand][order]
        first = np.r_[True, dirs_sorted[1:] != dirs_sorted[:-1]]
        claim_dirs = dirs_sorted[first]
        claim_cand = cand[order][first]
        fillable = rho[claim_dirs] == 0
        claim_dirs = claim_dirs[fillable]
        claim_cand = claim_cand[fillable]
        if claim_cand.size == 0:
            break
        # defensive dedup (claims are already direction-keyed, lowest dir first)
        _, keep = np.unique(claim_cand, return_index=True)
        winners = claim_cand[np.sort(keep)]
        winner_dirs = claim_dirs[np.sort(keep)]
        rank[winners] = l - 1
        rho[winner_dirs] += 1
        promoted.extend(winners.tolist())
    return NicheSelection(rank, np.asarray(promoted, dtype=np.int64), state.n_s + len(promoted))


def update_rank(r: np.ndarray, selected: np.ndarray, n_dif: int, l: int) -> np.ndarray:
    """Repair the selection count: promote by index order or demote recent picks."""
    rank = np.asarray(r).copy()
    selected = np.asarray(selected, dtype=np.int64)
    if n_dif > 0:
        remaining = np.flatnonzero(rank == l)
        if remaining.size < n_dif:
            raise RuntimeError("not enough last-front rows to reach n")
        rank[remaining[:n_dif]] = l - 1
    elif n_dif < 0:
        if selected.size < -n_dif:
            raise RuntimeError("cannot demote more rows than were promoted")
        rank[selected[selected.size + n_dif :]] = l
    return rank


def environmental_selection(
    X: np.ndarray,
    F: np.ndarray,
    R: DirectionSet,
    n: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Select exactly n rows from a merged population.

    The merged population is shuffled first so index-based tie-breaking
    carries no generational bias; the selected rows are returned in their
    shuffled order.
    """
    X = np.asarray(X, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    N = X.shape[0]
    if F.shape[0] != N or N < n:
        raise ValueError("need matching X/F with at least n rows")
    perm = rng.permutation(N)
    Xs, Fs = X[perm], F[perm]

    res = rank_assign(Fs, n)
    masked = Fs.copy()
    masked[res.r > res.l] = np.nan
    norm = normalize(masked)
    assoc = associate(norm.Fp, R)
    state = niche_counts(res.r, assoc.pi, res.l, R.count)
    picked = niche_select(state, res.r, assoc.pi, assoc.dist, res.l, n)
    rank = update_rank(picked.rank, picked.promoted, n - picked.n_selected, res.l)
    keep = np.flatnonzero(rank < res.l)
    if keep.size != n:
        raise RuntimeError(f"selection produced {keep.size} rows, expected {n}")
    return Xs[keep], Fs[keep]
