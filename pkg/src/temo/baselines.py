"""Sequential baseline selections, kept deliberately individual-by-individual.

These are the classic one-at-a-time algorithms the batched operators are
measured against: niche filling that picks a single individual per
iteration, and the MOEA/D inner loop whose later subproblems see earlier
replacements. They are correctness baselines, not timing baselines; the
rank computation is shared with the batched path because the two are
proven equal elsewhere, while normalization, association and the selection
loops are written independently here.
"""

from __future__ import annotations

import numpy as np

from .directions import DirectionSet
from .moead import MoeadState, pbi
from .ndsort import rank_assign
from .variation import VariationParams, polynomial_mutation, sbx


def _normalize_rows(F: np.ndarray) -> np.ndarray:
    """Scalar-path ideal shift and intercept scaling over the retained rows."""
    m = F.shape[1]
    ideal = F.min(axis=0)
    shifted = F - ideal
    extremes = np.empty(m, dtype=np.int64)
    for axis in range(m):
        w = np.full(m, 1e-6)
        w[axis] = 1.0
        best, best_score = 0, np.inf
        for i in range(shifted.shape[0]):
            score = np.max(shifted[i] / w)
            if score < best_score:
                best, best_score = i, score
        extremes[axis] = best
    E = shifted[extremes]
    try:
        plane = np.linalg.solve(E, np.ones(m))
        intercepts = 1.0 / plane
        if not np.all(np.isfinite(intercepts)) or np.any(intercepts <= 1e-10):
            raise np.linalg.LinAlgError
    except np.linalg.LinAlgError:
        intercepts = np.maximum(shifted.max(axis=0), 1e-10)
    return shifted / intercepts


def _associate_rows(Fp: np.ndarray, W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Projection-residual association, one row at a time."""
    unit = W / np.linalg.norm(W, axis=1, keepdims=True)
    pi = np.empty(Fp.shape[0], dtype=np.int64)
    dist = np.empty(Fp.shape[0])
    for i, f in enumerate(Fp):
        resid = f - (unit @ f)[:, None] * unit
        d = np.linalg.norm(resid, axis=1)
        pi[i] = int(np.argmin(d))
        dist[i] = d[pi[i]]
    return pi, dist


def nsga3_select_sequential(
    X: np.ndarray,
    F: np.ndarray,
    R: DirectionSet,
    n: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Original niche-preservation selection: one individual per iteration.

    Whole fronts are accepted while they fit; the last front is trickled in
    by repeatedly serving the least crowded reference direction (random
    among ties), taking its closest unclaimed member when the niche is
    empty and a random associated member otherwise.
    """
    X = np.asarray(X, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    res = rank_assign(F, n)
    chosen = np.flatnonzero(res.r < res.l)
    last = np.flatnonzero(res.r == res.l)
    if chosen.size == n:
        return X[chosen], F[chosen]

    retained = np.concatenate([chosen, last])
    Fp = _normalize_rows(F[retained])
    pi_all, dist_all = _associate_rows(Fp, R.W)
    pi = dict(zip(retained.tolist(), pi_all.tolist()))
    dist = dict(zip(retained.tolist(), dist_all.tolist()))

    rho = np.zeros(R.count, dtype=np.int64)
    for i in chosen:
        rho[pi[i]] += 1
    alive = np.ones(R.count, dtype=bool)
    pool = set(last.tolist())
    picked = list(chosen)
    while len(picked) < n:
        candidates_dirs = np.flatnonzero(alive)
        low = candidates_dirs[rho[candidates_dirs] == rho[candidates_dirs].min()]
        j = int(rng.choice(low))
        members = [i for i in pool if pi[i] == j]
        if not members:
            alive[j] = False
            continue
        if rho[j] == 0:
            pick = min(members, key=lambda i: (dist[i], i))
        else:
            pick = int(rng.choice(sorted(members)))
        picked.append(pick)
        pool.remove(pick)
        rho[j] += 1
    idx = np.asarray(picked, dtype=np.int64)
    return X[idx], F[idx]


def moead_step_sequential(
    state: MoeadState,
    rng: np.random.Generator,
    params: VariationParams,
    evaluate_fn,
) -> MoeadState:
    """Original MOEA/D inner loop: each subproblem updates in sequence."""
    n, T = state.I_nb.shape
    if T < 2:
        raise ValueError("neighborhood size must be at least 2 for mating")
    X = state.X.copy()
    F = state.F1.copy()
    z = state.z.copy()
    for i in range(n):
        a, b = rng.choice(T, size=2, replace=False)
        p, q = state.I_nb[i, a], state.I_nb[i, b]
        child = sbx(rng, X[p][None, :], X[q][None, :], params)[0]
        child = polynomial_mutation(rng, child[None, :], params)[0]
        f_child = evaluate_fn(child[None, :])[0]
        z = np.minimum(z, f_child)
        for j in state.I_nb[i]:
            if pbi(f_child, state.W[j], z, state.theta) <= pbi(F[j], state.W[j], z, state.theta):
                X[j] = child
                F[j] = f_child
    return MoeadState(X, F, z, state.W, state.I_nb, state.theta)
