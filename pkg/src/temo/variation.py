"""Whole-population mating, simulated binary crossover, polynomial mutation.

Both operators draw one uniform matrix per parent block and apply the usual
spread/step transforms through masks, so a population is varied in a single
pass with no per-individual branching. Offspring are clipped to the bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensorops import heaviside, masked_blend


@dataclass(frozen=True)
class VariationParams:
    """SBX / polynomial-mutation parameters and decision bounds."""

    eta_c: float = 20.0
    eta_m: float = 20.0
    p_m: float | None = None  # None means 1/d
    lower: np.ndarray = None
    upper: np.ndarray = None
    # Per-gene 0.5 rule of the common reference implementations: a gene
    # crosses with probability one half (else passes through), and crossed
    # genes swap children with probability one half. Off reproduces the
    # plain all-genes formulation.
    gene_swap: bool = True

    def __post_init__(self):
        if self.eta_c <= 0 or self.eta_m <= 0:
            raise ValueError("distribution indices must be positive")
        if self.p_m is not None and not 0.0 <= self.p_m <= 1.0:
            raise ValueError("p_m must lie in [0, 1]")
        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        if not np.all(lower < upper):
            raise ValueError("lower bounds must be strictly below upper bounds")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def mutation_prob(self, d: int) -> float:
        return 1.0 / d if self.p_m is None else self.p_m


def pair_parents(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Split a uniform random permutation of 0..n-1 into two mating halves."""
    if n < 2:
        raise ValueError("need at least two individuals to pair")
    perm = rng.permutation(n)
    half = n // 2
    return perm[:half], perm[half : 2 * half]


def sbx(
    rng: np.random.Generator,
    X1: np.ndarray,
    X2: np.ndarray,
    params: VariationParams,
) -> np.ndarray:
    """Simulated binary crossover on paired parent blocks.

    Returns the stacked children [C1; C2] (2q x d for q x d inputs), clipped
    to the bounds. A draw of exactly 0.5 gives spread 1, i.e. the parents.
    """
    X1 = np.asarray(X1, dtype=np.float64)
    X2 = np.asarray(X2, dtype=np.float64)
    if X1.shape != X2.shape:
        raise ValueError("parent blocks must share a shape")
    mu = rng.random(X1.shape)
    exponent = 1.0 / (params.eta_c + 1.0)
    low_side = heaviside(0.5 - mu)  # mu <= 0.5
    beta = masked_blend(
        low_side,
        np.power(2.0 * mu, exponent),
        np.power(1.0 / (2.0 - 2.0 * mu), exponent),
    )
    if params.gene_swap:
        swap = (rng.random(X1.shape) < 0.5).astype(np.float64)
        beta = beta * (1.0 - 2.0 * swap)
        crossed = (rng.random(X1.shape) < 0.5).astype(np.int64)
        beta = masked_blend(crossed, beta, np.ones_like(beta))
    # offset form of the usual (1 +- beta)/2 mix: exact at beta=1 and for
    # identical parents
    shift = 0.5 * (1.0 - beta)
    c1 = X1 + shift * (X2 - X1)
    c2 = X2 + shift * (X1 - X2)
    children = np.concatenate([c1, c2], axis=0)
    return np.clip(children, params.lower, params.upper)


def polynomial_mutation(
    rng: np.random.Generator,
    X: np.ndarray,
    params: VariationParams,
) -> np.ndarray:
    """Bounded polynomial mutation, applied per gene with probability p_m.

    The step for a gene hit by mutation follows the two-sided polynomial
    distribution with index eta_m; a draw of exactly 0.5 yields a zero step.
    """
    X = np.asarray(X, dtype=np.float64)
    span = params.upper - params.lower
    eta = params.eta_m + 1.0
    mu = rng.random(X.shape)
    hit = heaviside(params.mutation_prob(X.shape[1]) - rng.random(X.shape))

    gap_lo = (X - params.lower) / span
    gap_hi = (params.upper - X) / span
    step_lo = np.power(
        2.0 * mu + (1.0 - 2.0 * mu) * np.power(1.0 - gap_lo, eta), 1.0 / eta
    ) - 1.0
    step_hi = 1.0 - np.power(
        2.0 - 2.0 * mu + (2.0 * mu - 1.0) * np.power(1.0 - gap_hi, eta), 1.0 / eta
    )
    step = masked_blend(heaviside(0.5 - mu), step_lo, step_hi)
    mutated = X + step * span
    return np.clip(masked_blend(hit, mutated, X), params.lower, params.upper)
