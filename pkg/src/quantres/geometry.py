"""LP-backed checks of the polytope results behind the reach-time shortcuts.

Every set is a zonotope ``{G u : |u|_inf <= 1}``. The checks sample
directions or grid points and compare against closed-form candidates; they
are numerical certificates with explicit slack, not proofs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, ResilienceError, Tolerances, ValidationError, matrix_rank
from .lp import LpProblem, Status, solve

SLACK = 1e-6
GRID_CAP = 100_000


class EmptyIntersection(ResilienceError):
    pass


class ContainmentViolation(ResilienceError):
    pass


@dataclass(frozen=True, eq=False)
class Zonotope:
    generator: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generator, dtype=float))
        if g.shape[0] < 1 or g.shape[1] < 1:
            raise ValidationError("generator", "need at least one row and one column")
        object.__setattr__(self, "generator", g)

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    def vertices(self) -> np.ndarray:
        """Images of all sign patterns (a superset of the true vertices)."""
        k = self.generator.shape[1]
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=k)))
        return signs @ self.generator.T


@dataclass(frozen=True, eq=False)
class Segment:
    """The symmetric segment ``[-x, x]``."""

    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).ravel())

    def as_zonotope(self) -> Zonotope:
        return Zonotope(self.x[:, None])


def _unit(d, n) -> np.ndarray:
    d = np.asarray(d, dtype=float).ravel()
    if d.size != n:
        raise ValidationError("d", f"expected length {n}")
    if abs(np.linalg.norm(d) - 1) > 1e-9:
        raise ValidationError("d", "direction must have unit norm")
    return d


def gauge(y: Zonotope, x, tol: Tolerances = DEFAULT_TOL) -> float:
    """Smallest ``s`` with ``x in s * Y``; ``inf`` if ``x`` is outside the span."""
    g = y.generator
    n, k = g.shape
    x = np.asarray(x, dtype=float).ravel()
    # vars: u (k), s, slack+ (k), slack- (k);  u - s + sp = 0, -u - s + sm = 0
    eye = np.eye(k)
    a = np.block([
        [g, np.zeros((n, 1)), np.zeros((n, 2 * k))],
        [eye, -np.ones((k, 1)), eye, np.zeros((k, k))],
        [-eye, -np.ones((k, 1)), np.zeros((k, k)), eye],
    ])
    b = np.concatenate([x, np.zeros(2 * k)])
    c = np.zeros(3 * k + 1)
    c[k] = -1.0
    lower = np.concatenate([np.full(k, -np.inf), [0.0], np.zeros(2 * k)])
    upper = np.full(3 * k + 1, np.inf)
    out = solve(LpProblem(c, a, b, lower, upper), tol.feas_tol)
    if out.status is not Status.OPTIMAL:
        return math.inf
    return -out.value


def is_interior(y: Zonotope, x, margin: float = 1e-9, tol: Tolerances = DEFAULT_TOL) -> bool:
    if matrix_rank(y.generator, tol.rank_tol) < y.dim:
        return False
    return gauge(y, x, tol) < 1 - margin


def directed_support(y: Zonotope, x, d, tol: Tolerances = DEFAULT_TOL) -> float:
    """Farthest reach of ``x + Y`` along the ray ``R+ d``: ``max{lam >= 0 : lam d - x in Y}``."""
    g = y.generator
    n, k = g.shape
    d = _unit(d, n)
    x = np.asarray(x, dtype=float).ravel()
    a = np.hstack([g, -d[:, None]])
    c = np.zeros(k + 1)
    c[-1] = 1.0
    lower = np.concatenate([-np.ones(k), [0.0]])
    upper = np.concatenate([np.ones(k), [np.inf]])
    out = solve(LpProblem(c, a, -x, lower, upper), tol.feas_tol)
    if out.status is Status.INFEASIBLE:
        raise EmptyIntersection("ray from x + Y along d misses the set")
    if out.status is Status.UNBOUNDED:
        return math.inf
    return out.value


def ratio_rY(y: Zonotope, x, d, tol: Tolerances = DEFAULT_TOL) -> float:
    """Support along ``d`` helped by ``x`` over support hindered by ``x``."""
    x = np.asarray(x, dtype=float).ravel()
    _require_interior(y, x, "x", tol)
    return _ratio_rY(y, x, d, tol)


def _require_interior(y, x, name, tol):
    if not (is_interior(y, x, tol=tol) and is_interior(y, -x, tol=tol)):
        raise ValidationError(name, "x and -x must be interior points of Y")


def _ratio_rY(y, x, d, tol):
    if not np.any(x):
        return 1.0
    return directed_support(y, x, d, tol) / directed_support(y, -x, d, tol)


def ratio_rXY(seg: Segment, y: Zonotope, d, tol: Tolerances = DEFAULT_TOL, check_grid: int = 0) -> float:
    """Best-case over worst-case support when a point of ``seg`` is added to ``Y``.

    The numerator is one LP over the Minkowski sum ``seg + Y``; the
    denominator is the smaller endpoint support (the minimum over a convex
    set is attained at a vertex). ``check_grid > 0`` also evaluates interior
    segment points and raises if one undercuts the endpoints.
    """
    if np.any(seg.x):
        _require_interior(y, seg.x, "seg", tol)
    return _ratio_rXY(seg, y, d, tol, check_grid)


def _ratio_rXY(seg, y, d, tol, check_grid=0):
    x = seg.x
    if not np.any(x):
        return 1.0
    d = _unit(d, y.dim)
    plus = directed_support(y, x, d, tol)
    minus = directed_support(y, -x, d, tol)
    low = min(plus, minus)
    if check_grid:
        for s in np.linspace(-1, 1, check_grid):
            v = directed_support(y, s * x, d, tol)
            if v < low - SLACK:
                raise AssertionError(f"interior segment point undercuts endpoints: {v} < {low}")
    top = directed_support(Zonotope(np.hstack([y.generator, x[:, None]])), np.zeros(y.dim), d, tol)
    return top / low


def _check_contained(x: Zonotope, y: Zonotope, tol: Tolerances, rng=None, max_vertices: int = 4096):
    verts = x.vertices() if x.generator.shape[1] <= 12 else None
    if verts is None or len(verts) > max_vertices:
        rng = rng or np.random.default_rng(0)
        signs = rng.choice([-1.0, 1.0], size=(max_vertices, x.generator.shape[1]))
        verts = signs @ x.generator.T
    for v in verts:
        if gauge(y, v, tol) > 1 + 1e-9:
            raise ContainmentViolation("X is not contained in Y")


def _grid(k: int, per_dim: int) -> np.ndarray:
    per_dim = max(2, min(per_dim, int(GRID_CAP ** (1.0 / k))))
    axis = np.linspace(-1, 1, per_dim)
    return np.array(list(itertools.product(axis, repeat=k)))


def check_vertex_minimum(x: Zonotope, y: Zonotope, d, grid: int = 64, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Grid check that ``min_x |y*(x) - x|`` over ``X`` is attained at a vertex of ``X``.

    ``|y*(x) - x|`` is the distance from ``x`` to the boundary of ``Y`` along ``d``.
    """
    if grid < 10:
        raise ValidationError("grid", "need at least 10 points per generator")
    d = _unit(d, y.dim)
    _check_contained(x, y, tol)
    vert_min = min(directed_support(y, -v, d, tol) for v in x.vertices())
    pts = _grid(x.generator.shape[1], grid) @ x.generator.T
    grid_min = min(directed_support(y, -p, d, tol) for p in pts)
    return grid_min >= vert_min - 1e-7


def _plane_directions(anchor: np.ndarray, n_dirs: int, rng) -> list[np.ndarray]:
    """Unit directions on a great circle through ``anchor``'s direction."""
    n = anchor.size
    e1 = anchor / np.linalg.norm(anchor) if np.any(anchor) else np.eye(n)[0]
    if n == 1:
        return [e1, -e1]
    while True:
        r = rng.standard_normal(n)
        r -= (r @ e1) * e1
        if np.linalg.norm(r) > 1e-6:
            break
    e2 = r / np.linalg.norm(r)
    betas = 2 * np.pi * np.arange(n_dirs) / n_dirs
    return [math.cos(b) * e1 + math.sin(b) * e2 for b in betas]


@dataclass(frozen=True)
class CollinearCheck:
    max_over_dirs: float
    value_at_x: float
    value_at_minus_x: float
    passed: bool


@dataclass(frozen=True)
class SegmentCheck:
    max_over_dirs: float
    value_at_x: float
    passed: bool


def check_collinear_maximum(y: Zonotope, x, n_dirs: int = 720, rng=None, tol: Tolerances = DEFAULT_TOL) -> CollinearCheck:
    """Sampled check that ``max_d r_Y(d, x)`` is reached at ``d = +-x/|x|``."""
    x = np.asarray(x, dtype=float).ravel()
    if not np.any(x):
        return CollinearCheck(1.0, 1.0, 1.0, True)
    rng = rng if rng is not None else np.random.default_rng(0)
    u = x / np.linalg.norm(x)
    at_x = ratio_rY(y, x, u, tol)
    at_minus = _ratio_rY(y, x, -u, tol)
    best = max(_ratio_rY(y, x, d, tol) for d in _plane_directions(x, n_dirs, rng))
    return CollinearCheck(best, at_x, at_minus, best <= max(at_x, at_minus) + SLACK)


def check_segment_maximum(seg: Segment, y: Zonotope, n_dirs: int = 720, rng=None,
                          tol: Tolerances = DEFAULT_TOL) -> SegmentCheck:
    """Sampled check that ``max_d r_XY(d)`` is reached along the segment."""
    x = seg.x
    if not np.any(x):
        return SegmentCheck(1.0, 1.0, True)
    rng = rng if rng is not None else np.random.default_rng(0)
    at_x = ratio_rXY(seg, y, x / np.linalg.norm(x), tol)
    best = max(_ratio_rXY(seg, y, d, tol) for d in _plane_directions(x, n_dirs, rng))
    return SegmentCheck(best, at_x, best <= at_x + SLACK)


def random_zonotope(rng, n: int = 2, k: int | None = None) -> Zonotope:
    """Full-dimensional random zonotope with ``k`` (default n..n+3) generators."""
    k = k if k is not None else int(rng.integers(n, n + 4))
    while True:
        g = rng.uniform(-1, 1, size=(n, k))
        if matrix_rank(g) == n and np.linalg.svd(g, compute_uv=False)[-1] > 0.1:
            return Zonotope(g)


def random_interior_point(rng, y: Zonotope, shrink: float = 0.9) -> np.ndarray:
    u = rng.uniform(-shrink, shrink, size=y.generator.shape[1])
    return y.generator @ u


def random_inner_zonotope(rng, y: Zonotope, k: int = 2) -> Zonotope:
    """Zonotope ``G_Y R`` with row-sum-bounded ``R`` so it sits inside ``Y``."""
    r = rng.uniform(-1, 1, size=(y.generator.shape[1], k))
    r *= rng.uniform(0.2, 0.95) / np.max(np.sum(np.abs(r), axis=1))
    return Zonotope(y.generator @ r)
