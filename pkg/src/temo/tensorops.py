"""Data-parallel primitives the selection operators are written against.

Every algorithm module expresses its per-individual work through these five
operations (plus plain broadcasting), so no algorithm contains an explicit
per-individual branch. Masks are 0/1 integer arrays, kept distinct from the
payload dtype. Sorts are stable with index tie-breaking; the sentinel used to
push entries past every real value is the largest finite float64, never an
IEEE infinity, so sentinel arithmetic cannot produce NaN.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

# Largest finite float64; stands in for the pseudocode's "infinity" sentinel.
BIG = np.finfo(np.float64).max


def heaviside(a: np.ndarray) -> np.ndarray:
    """Elementwise step: 1 where ``a >= 0``, else 0 (int64 mask)."""
    return (np.asarray(a) >= 0).astype(np.int64)


def masked_blend(mask: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Select ``a`` where ``mask`` is nonzero, else ``b``.

    Equivalent to ``mask*a + (1-mask)*b`` for finite operands, but keeps
    true branch semantics (a masked-out NaN never leaks into the result).
    Shapes must broadcast together.
    """
    mask = np.asarray(mask)
    if mask.dtype != np.bool_ and not np.isin(np.unique(mask), (0, 1)).all():
        raise ValueError("mask must contain only 0/1 values")
    return np.where(mask != 0, a, b)


def batched_map(fn: Callable[[np.ndarray], np.ndarray], a: np.ndarray) -> np.ndarray:
    """Apply ``fn`` to every row of ``a`` and stack the results.

    Bit-identical to the sequential row loop by construction; rows must
    produce consistently shaped outputs.
    """
    a = np.asarray(a)
    if a.shape[0] < 1:
        raise ValueError("batched_map needs at least one row")
    rows = [np.asarray(fn(a[i])) for i in range(a.shape[0])]
    first = rows[0].shape
    if any(r.shape != first for r in rows[1:]):
        raise ValueError("row function returned inconsistent shapes")
    return np.stack(rows, axis=0)


def argsort_stable(v: np.ndarray) -> np.ndarray:
    """Indices that sort ``v`` ascending, ties broken by original index."""
    return np.argsort(np.asarray(v), kind="stable")


def lexsort(primary: np.ndarray, secondary: np.ndarray) -> np.ndarray:
    """Indices ordered by ``primary`` ascending, then ``secondary``, then index."""
    primary = np.asarray(primary)
    secondary = np.asarray(secondary)
    if primary.shape != secondary.shape or primary.ndim != 1:
        raise ValueError("lexsort expects two equal-length vectors")
    # np.lexsort keys run least-significant first; the arange pins full ties.
    return np.lexsort((np.arange(primary.size), secondary, primary))
