"""Scalable DTLZ1-7 benchmark problems with batch evaluation.

All problems minimize m objectives over [0,1]^d with the usual split into
m-1 position variables and d-m+1 distance variables. ``true_front`` samples
the analytic Pareto front for IGD: a simplex lattice for DTLZ1, its radial
projection for DTLZ2-4, the degenerate curve for DTLZ5-6, and a filtered
dense grid for DTLZ7's disconnected front.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .directions import largest_h_for, simplex_lattice

_NAMES = ("dtlz1", "dtlz2", "dtlz3", "dtlz4", "dtlz5", "dtlz6", "dtlz7")


@dataclass(frozen=True)
class ProblemSpec:
    """A DTLZ instance: name, decision dimension d, objective count m."""

    name: str
    d: int
    m: int
    lower: np.ndarray = field(default=None)
    upper: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.name not in _NAMES:
            raise ValueError(f"unknown problem {self.name!r}")
        if self.m < 2:
            raise ValueError("need at least 2 objectives")
        if self.d < self.m:
            raise ValueError("DTLZ needs d >= m")
        lower = np.zeros(self.d) if self.lower is None else np.asarray(self.lower, dtype=np.float64)
        upper = np.ones(self.d) if self.upper is None else np.asarray(self.upper, dtype=np.float64)
        if lower.shape != (self.d,) or upper.shape != (self.d,):
            raise ValueError("bounds must be length-d vectors")
        if not np.all(lower < upper):
            raise ValueError("lower bounds must be strictly below upper bounds")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def k(self) -> int:
        """Number of distance variables."""
        return self.d - self.m + 1


def default_dimension(name: str, m: int) -> int:
    """Canonical d for a DTLZ problem: k=5 (DTLZ1), k=10 (DTLZ2-6), k=20 (DTLZ7)."""
    if name == "dtlz1":
        return m + 4
    if name == "dtlz7":
        return m + 19
    return m + 9


def make_problem(name: str, m: int = 3, d: int | None = None) -> ProblemSpec:
    name = name.lower()
    if d is None:
        d = default_dimension(name, m)
    return ProblemSpec(name, d, m)


def _g_rastrigin(xm: np.ndarray) -> np.ndarray:
    z = xm - 0.5
    return 100.0 * (xm.shape[1] + np.sum(z * z - np.cos(20.0 * np.pi * z), axis=1))


def _g_sphere(xm: np.ndarray) -> np.ndarray:
    z = xm - 0.5
    return np.sum(z * z, axis=1)


def _linear_shape(pos: np.ndarray, g: np.ndarray) -> np.ndarray:
    """DTLZ1 objective shape: products of position coordinates on the simplex."""
    n, m1 = pos.shape
    m = m1 + 1
    f = np.empty((n, m))
    for i in range(m):
        prod = np.prod(pos[:, : m - 1 - i], axis=1)
        if i > 0:
            prod = prod * (1.0 - pos[:, m - 1 - i])
        f[:, i] = 0.5 * (1.0 + g) * prod
    return f


def _spherical_shape(theta: np.ndarray, g: np.ndarray) -> np.ndarray:
    """DTLZ2-6 objective shape: products of cosines on the unit sphere octant."""
    n, m1 = theta.shape
    m = m1 + 1
    f = np.empty((n, m))
    for i in range(m):
        prod = np.prod(np.cos(theta[:, : m - 1 - i]), axis=1)
        if i > 0:
            prod = prod * np.sin(theta[:, m - 1 - i])
        f[:, i] = (1.0 + g) * prod
    return f


def evaluate(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    """Batch-evaluate: n x d decision rows to n x m objective rows."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != spec.d:
        raise ValueError(f"expected n x {spec.d} input, got {X.shape}")
    m = spec.m
    pos, xm = X[:, : m - 1], X[:, m - 1 :]

    if spec.name == "dtlz1":
        return _linear_shape(pos, _g_rastrigin(xm))
    if spec.name == "dtlz2":
        return _spherical_shape(pos * (np.pi / 2.0), _g_sphere(xm))
    if spec.name == "dtlz3":
        return _spherical_shape(pos * (np.pi / 2.0), _g_rastrigin(xm))
    if spec.name == "dtlz4":
        return _spherical_shape(np.power(pos, 100.0) * (np.pi / 2.0), _g_sphere(xm))
    if spec.name in ("dtlz5", "dtlz6"):
        g = _g_sphere(xm) if spec.name == "dtlz5" else np.sum(np.power(xm, 0.1), axis=1)
        theta = np.empty_like(pos)
        if m >= 2:
            theta[:, 0] = pos[:, 0] * (np.pi / 2.0)
        if m > 2:
            bend = np.pi / (4.0 * (1.0 + g))[:, None]
            theta[:, 1:] = bend * (1.0 + 2.0 * g[:, None] * pos[:, 1:])
        return _spherical_shape(theta, g)
    # dtlz7
    g = 1.0 + 9.0 / spec.k * np.sum(xm, axis=1)
    f = np.empty((X.shape[0], m))
    f[:, : m - 1] = pos
    h = m - np.sum(pos / (1.0 + g)[:, None] * (1.0 + np.sin(3.0 * np.pi * pos)), axis=1)
    f[:, m - 1] = (1.0 + g) * h
    return f


def _mutually_nondominated(F: np.ndarray, block: int = 512) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row (blocked in n)."""
    n = F.shape[0]
    keep = np.empty(n, dtype=bool)
    for start in range(0, n, block):
        sub = F[start : start + block]
        le = np.all(F[:, None, :] <= sub[None, :, :], axis=-1)
        lt = np.any(F[:, None, :] < sub[None, :, :], axis=-1)
        keep[start : start + block] = ~np.any(le & lt, axis=0)
    return keep


def true_front(spec: ProblemSpec, count: int) -> np.ndarray:
    """Sample about ``count`` points on the analytic Pareto front.

    Simplex-lattice families return the largest lattice with at most
    ``count`` points; curve/grid families return exactly ``count``.
    """
    if count < spec.m:
        raise ValueError("count must be at least m")
    m = spec.m
    if spec.name == "dtlz1":
        return 0.5 * simplex_lattice(m, largest_h_for(count, m))
    if spec.name in ("dtlz2", "dtlz3", "dtlz4"):
        pts = simplex_lattice(m, largest_h_for(count, m))
        return pts / np.linalg.norm(pts, axis=1, keepdims=True)
    if spec.name in ("dtlz5", "dtlz6"):
        theta = np.full((count, m - 1), np.pi / 4.0)
        theta[:, 0] = np.linspace(0.0, np.pi / 2.0, count)
        return _spherical_shape(theta, np.zeros(count))
    # dtlz7: dense grid over position variables, keep the non-dominated part
    if m > 3:
        raise ValueError("dtlz7 front sampling supports m <= 3")
    grid_side = 4001 if m == 2 else 141
    axes = [np.linspace(0.0, 1.0, grid_side)] * (m - 1)
    pos = np.stack([a.ravel() for a in np.meshgrid(*axes, indexing="ij")], axis=1)
    g = np.ones(pos.shape[0])  # distance variables at 0
    f = np.empty((pos.shape[0], m))
    f[:, : m - 1] = pos
    h = m - np.sum(pos / (1.0 + g)[:, None] * (1.0 + np.sin(3.0 * np.pi * pos)), axis=1)
    f[:, m - 1] = (1.0 + g) * h
    front = f[_mutually_nondominated(f)]
    order = np.lexsort(front.T[::-1])
    front = front[order]
    take = np.linspace(0, front.shape[0] - 1, count).round().astype(int)
    return front[np.unique(take)]
