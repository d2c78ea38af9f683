"""Dense bounded-variable simplex for small equality-constrained LPs.

Solves ``max c @ z  s.t.  A z = b,  lower <= z <= upper`` where bounds may be
infinite. Two phases with one artificial per row, Bland's rule for both the
entering and the leaving choice, and nonbasic variables held at a finite
bound (or at zero when free). Rows are scaled to unit max-norm first; the
point is reported in the original variables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numba
import numpy as np

from .core import NumericalFailure, ResilienceError

PIVOT_TOL = 1e-11
MAX_ITER = 5000


class DimensionMismatch(ResilienceError, ValueError):
    pass


class Status(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True, eq=False)
class LpProblem:
    objective: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).ravel()
        q = c.size
        a = np.asarray(self.a_eq, dtype=float)
        if a.size == 0:
            a = a.reshape(0, q) if a.ndim < 2 or a.shape[0] == 0 else a
        b = np.asarray(self.b_eq, dtype=float).ravel()
        lo = np.asarray(self.lower, dtype=float).ravel()
        hi = np.asarray(self.upper, dtype=float).ravel()
        if a.ndim != 2 or a.shape[1] != q:
            raise DimensionMismatch(f"a_eq has shape {a.shape}, expected (k, {q})")
        if b.size != a.shape[0]:
            raise DimensionMismatch(f"b_eq has length {b.size}, expected {a.shape[0]}")
        if lo.size != q or hi.size != q:
            raise DimensionMismatch("lower/upper must match the objective length")
        for name, v in (("objective", c), ("a_eq", a), ("b_eq", b)):
            if not np.all(np.isfinite(v)):
                raise DimensionMismatch(f"{name} has non-finite entries")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise DimensionMismatch("bounds must not be NaN")
        for name, v in (("objective", c), ("a_eq", a), ("b_eq", b), ("lower", lo), ("upper", hi)):
            object.__setattr__(self, name, v)


@dataclass(frozen=True, eq=False)
class LpOutcome:
    status: Status
    value: float | None = None
    point: np.ndarray | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


@numba.njit(cache=True)
def _matvec(m, v):
    out = np.zeros(m.shape[0])
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            out[i] += m[i, j] * v[j]
    return out


@numba.njit(cache=True)
def _simplex(a, b, c, lo, hi, x, basis, opt_tol):
    """Bounded primal simplex iterations; mutates ``x`` and ``basis``.

    Returns 1 at optimality, 0 if an improving ray was found, -1 when the
    iteration limit is hit.
    """
    k, q = a.shape
    in_basis = np.zeros(q, dtype=np.bool_)
    for i in range(k):
        in_basis[basis[i]] = True
    bm = np.empty((k, k))
    for _ in range(MAX_ITER):
        for i in range(k):
            bm[:, i] = a[:, basis[i]]
        binv = np.linalg.inv(bm) if k else np.zeros((0, 0))
        rhs = b.copy()
        for j in range(q):
            if not in_basis[j] and x[j] != 0.0:
                rhs -= a[:, j] * x[j]
        xb = _matvec(binv, rhs)
        cb = np.empty(k)
        for i in range(k):
            x[basis[i]] = xb[i]
            cb[i] = c[basis[i]]
        y = _matvec(binv.T, cb)
        # Bland: lowest-index improving nonbasic variable enters
        j = -1
        direction = 0.0
        for jj in range(q):
            if in_basis[jj]:
                continue
            dj = c[jj]
            for i in range(k):
                dj -= y[i] * a[i, jj]
            if dj > opt_tol and x[jj] < hi[jj]:
                j, direction = jj, 1.0
                break
            if dj < -opt_tol and x[jj] > lo[jj]:
                j, direction = jj, -1.0
                break
        if j < 0:
            return 1
        rate = -direction * _matvec(binv, a[:, j])
        t_min = np.inf
        leave = -1
        leave_at_lower = True
        for i in range(k):
            var = basis[i]
            r = rate[i]
            if r < -PIVOT_TOL and np.isfinite(lo[var]):
                t, at_lower = max(xb[i] - lo[var], 0.0) / -r, True
            elif r > PIVOT_TOL and np.isfinite(hi[var]):
                t, at_lower = max(hi[var] - xb[i], 0.0) / r, False
            else:
                continue
            if t < t_min - 1e-15 or (t <= t_min + 1e-15 and var < basis[leave]):
                t_min, leave, leave_at_lower = t, i, at_lower
        t_flip = hi[j] - lo[j]
        if t_flip <= t_min:
            if not np.isfinite(t_flip):
                return 0
            x[j] = hi[j] if direction > 0 else lo[j]
            continue
        old = basis[leave]
        x[j] += direction * t_min
        x[old] = lo[old] if leave_at_lower else hi[old]
        in_basis[old] = False
        in_basis[j] = True
        basis[leave] = j
    return -1


@numba.njit(cache=True)
def _two_phase(c, a, b, lo, hi, feas_tol):
    """Status code (0 optimal, 1 infeasible, 2 unbounded, -1 stalled) and point."""
    k0, q = a.shape
    z = np.zeros(q)
    for j in range(q):
        if lo[j] > hi[j]:
            return 1, z
    keep = np.zeros(k0, dtype=np.bool_)
    for i in range(k0):
        norm = np.max(np.abs(a[i])) if q else 0.0
        if norm == 0.0:
            if abs(b[i]) > feas_tol:
                return 1, z
        else:
            keep[i] = True
    k = int(keep.sum())
    aa = np.zeros((k, q + k))
    bb = np.zeros(k)
    r = 0
    for i in range(k0):
        if keep[i]:
            norm = np.max(np.abs(a[i]))
            aa[r, :q] = a[i] / norm
            bb[r] = b[i] / norm
            r += 1
    x = np.zeros(q + k)
    lo_f = np.zeros(q + k)
    hi_f = np.full(q + k, np.inf)
    for j in range(q):
        lo_f[j], hi_f[j] = lo[j], hi[j]
        if np.isfinite(lo[j]):
            x[j] = lo[j]
        elif np.isfinite(hi[j]):
            x[j] = hi[j]
    for i in range(k):
        resid = bb[i]
        for j in range(q):
            resid -= aa[i, j] * x[j]
        aa[i, q + i] = 1.0 if resid >= 0 else -1.0
        x[q + i] = abs(resid)
    basis = np.arange(q, q + k)

    if k:
        c1 = np.zeros(q + k)
        c1[q:] = -1.0
        if _simplex(aa, bb, c1, lo_f, hi_f, x, basis, 1e-12) < 0:
            return -1, z
        bmax = np.max(np.abs(bb))
        if np.sum(x[q:]) > feas_tol * (1.0 + bmax):
            return 1, z
        hi_f[q:] = 0.0
        for i in range(q, q + k):
            x[i] = 0.0

    c2 = np.zeros(q + k)
    c2[:q] = c
    cmax = np.max(np.abs(c)) if q else 0.0
    code = _simplex(aa, bb, c2, lo_f, hi_f, x, basis, 1e-9 * max(1.0, cmax))
    if code < 0:
        return -1, z
    if code == 0:
        return 2, z
    for j in range(q):
        z[j] = min(max(x[j], lo[j]), hi[j])
    return 0, z


_STATUS = {0: Status.OPTIMAL, 1: Status.INFEASIBLE, 2: Status.UNBOUNDED}


def solve(p: LpProblem, feas_tol: float = 1e-10) -> LpOutcome:
    """Maximise ``p.objective @ z`` subject to the problem's rows and box."""
    if not feas_tol > 0:
        raise ValueError("feas_tol must be positive")
    code, z = _two_phase(p.objective, p.a_eq, p.b_eq, p.lower, p.upper, feas_tol)
    if code < 0:
        raise NumericalFailure("simplex iteration limit reached")
    status = _STATUS[code]
    if status is not Status.OPTIMAL:
        return LpOutcome(status)
    return LpOutcome(status, float(p.objective @ z), z)
