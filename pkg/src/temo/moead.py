"""Decoupled, fully batched MOEA/D generation step.

The sequential inner loop of classic MOEA/D (one subproblem at a time, each
seeing its predecessors' replacements) is decoupled into two batched stages:
every offspring first compares against its whole neighborhood at once,
producing an update-index matrix with -1 marking would-be replacements;
then every weight direction independently picks the scalarization-best
candidate among its own row and all offspring that claimed it. One elite
per direction forms the next population.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .directions import NeighborTable
from .tensorops import heaviside
from .variation import VariationParams, polynomial_mutation, sbx


@dataclass(frozen=True)
class MoeadState:
    """Population, objectives, ideal point, weights, neighborhoods, penalty."""

    X: np.ndarray
    F1: np.ndarray
    z: np.ndarray
    W: np.ndarray
    I_nb: np.ndarray
    theta: float = 5.0


@dataclass(frozen=True)
class UpdateIndexMatrix:
    """Row i holds subpopulation indices after offspring i's update; -1 marks replacements."""

    I_new: np.ndarray


def pbi(
    f: np.ndarray,
    w: np.ndarray,
    z: np.ndarray,
    theta: float,
    normalize_direction: bool = True,
) -> np.ndarray:
    """Penalty-based boundary intersection scalarization d1 + theta*d2.

    d1 is the projection of f-z onto the weight direction; d2 the residual.
    With ``normalize_direction`` the residual is taken against the unit
    direction (the orthogonal distance); the unnormalized variant scales the
    projection term by the raw weight instead. Broadcasts over leading axes.
    """
    f = np.asarray(f, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    v = f - z
    wnorm = np.sqrt(np.sum(w * w, axis=-1))
    if np.any(wnorm == 0):
        raise ValueError("zero weight vector in PBI")
    d1 = np.abs(np.sum(v * w, axis=-1)) / wnorm
    direction = w / wnorm[..., None] if normalize_direction else w
    resid = v - d1[..., None] * direction
    d2 = np.sqrt(np.sum(resid * resid, axis=-1))
    return d1 + theta * d2


def compare_update(
    state: MoeadState, F2: np.ndarray
) -> tuple[UpdateIndexMatrix, np.ndarray]:
    """Batched neighborhood comparison for all offspring at once.

    Keeps the running ideal point monotone (z_min folds the offspring into
    the previous z) and marks, per offspring row, every neighbor slot whose
    incumbent scalarizes no better than the offspring (ties replace).
    """
    F2 = np.asarray(F2, dtype=np.float64)
    n = state.F1.shape[0]
    z_min = np.minimum(state.z, F2.min(axis=0))
    nb_w = state.W[state.I_nb]  # n x T x m
    g_old = pbi(state.F1[state.I_nb], nb_w, z_min, state.theta)
    g_new = pbi(F2[:, None, :], nb_w, z_min, state.theta)
    improves = heaviside(g_old - g_new)  # n x T

    I_new = np.broadcast_to(np.arange(n, dtype=np.int64), (n, n)).copy()
    rows = np.repeat(np.arange(n), state.I_nb.shape[1])
    cols = state.I_nb.ravel()
    mask = improves.ravel() == 1
    I_new[rows[mask], cols[mask]] = -1
    return UpdateIndexMatrix(I_new), z_min


def elite_select(
    state: MoeadState,
    O: np.ndarray,
    F2: np.ndarray,
    update: UpdateIndexMatrix,
    z_min: np.ndarray,
    block: int = 256,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-direction elite pick over the blended candidate lists.

    Direction j's candidates are: offspring i wherever column j was marked
    -1, the incumbent row j everywhere else. The scalarization argmin wins,
    ties to the lowest candidate index. Column independence makes the whole
    pass a batch over directions.
    """
    I_new = update.I_new
    n, m = state.F1.shape
    winners = np.empty(n, dtype=np.int64)
    g_old = pbi(state.F1, state.W, z_min, state.theta)  # incumbent per direction
    v2 = F2  # offspring objectives, shared across direction blocks
    for start in range(0, n, block):
        stop = min(start + block, n)
        w_blk = state.W[start:stop]
        g_new = pbi(v2[:, None, :], w_blk[None, :, :], z_min, state.theta)  # n x B
        scores = np.where(I_new[:, start:stop] == -1, g_new, g_old[None, start:stop])
        winners[start:stop] = np.argmin(scores, axis=0)
    from_offspring = I_new[winners, np.arange(n)] == -1
    X_next = np.where(from_offspring[:, None], O[winners], state.X)
    F_next = np.where(from_offspring[:, None], F2[winners], state.F1)
    return X_next, F_next


def moead_offspring(
    state: MoeadState,
    rng: np.random.Generator,
    params: VariationParams,
    evaluate_fn: Callable[[np.ndarray], np.ndarray],
) -> tuple[np.ndarray, np.ndarray]:
    """One offspring per subproblem from two distinct random neighbors."""
    n, T = state.I_nb.shape
    if T < 2:
        raise ValueError("neighborhood size must be at least 2 for mating")
    pick1 = rng.integers(0, T, size=n)
    pick2 = rng.integers(0, T - 1, size=n)
    pick2 = pick2 + (pick2 >= pick1)
    rows = np.arange(n)
    p1 = state.X[state.I_nb[rows, pick1]]
    p2 = state.X[state.I_nb[rows, pick2]]
    children = sbx(rng, p1, p2, params)[:n]  # keep one child per pair
    O = polynomial_mutation(rng, children, params)
    return O, evaluate_fn(O)


def step(
    state: MoeadState,
    rng: np.random.Generator,
    params: VariationParams,
    evaluate_fn: Callable[[np.ndarray], np.ndarray],
) -> MoeadState:
    """One full generation: reproduce, compare/update, elite-select, move z."""
    O, F2 = moead_offspring(state, rng, params, evaluate_fn)
    update, z_min = compare_update(state, F2)
    X_next, F_next = elite_select(state, O, F2, update, z_min)
    return MoeadState(X_next, F_next, z_min, state.W, state.I_nb, state.theta)


def init_state(
    X: np.ndarray,
    F1: np.ndarray,
    W: np.ndarray,
    table: NeighborTable,
    theta: float = 5.0,
) -> MoeadState:
    z = F1.min(axis=0)
    return MoeadState(np.asarray(X), np.asarray(F1), z, np.asarray(W), table.I_nb, theta)


def default_neighborhood(n: int) -> int:
    """max(2, ceil(n/10)) capped at 20."""
    return min(20, max(2, -(-n // 10)))
