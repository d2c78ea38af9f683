"""Nominal and malfunctioning reach times, time ratios and direction sweeps.

Reach times and ratios are plain floats; ``math.inf`` marks a target the
malfunctioning system cannot be guaranteed to reach.
"""

from __future__ import annotations

import csv
import math
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    MalfunctionSplit,
    NotControllableError,
    NumericalFailure,
    ResilienceError,
    SystemSpec,
    Tolerances,
    ValidationError,
    is_controllable,
)
from .lp import LpProblem, Status, solve

INF = math.inf


class VertexBudgetExceeded(ResilienceError):
    pass


def _vector(d, size: int, name: str) -> np.ndarray:
    v = np.asarray(d, dtype=float).ravel()
    if v.size != size:
        raise ValidationError(name, f"expected length {size}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValidationError(name, "entries must be finite")
    return v


def max_gain(matrix: np.ndarray, bound: float, d: np.ndarray, offset: np.ndarray, tol: Tolerances = DEFAULT_TOL):
    """LP ``max{lam >= 0 : matrix @ u = lam * d - offset, |u| <= bound}``.

    Returns the optimum, or ``None`` when the constraint set is empty.
    """
    n, k = matrix.shape
    a = np.hstack([matrix, -d[:, None]])
    c = np.zeros(k + 1)
    c[-1] = 1.0
    lower = np.concatenate([np.full(k, -bound), [0.0]])
    upper = np.concatenate([np.full(k, bound), [INF]])
    out = solve(LpProblem(c, a, -offset, lower, upper), tol.feas_tol)
    if out.status is Status.INFEASIBLE:
        return None
    if out.status is Status.UNBOUNDED:
        return INF
    return out.value


def nominal_reach_time(sys: SystemSpec, d, tol: Tolerances = DEFAULT_TOL) -> float:
    """Minimal time for the healthy system to move the state by ``d``.

    Time-optimal inputs are constant, so this is ``1 / lam*`` with
    ``lam* = max{lam >= 0 : b_bar @ u = lam * d, |u| <= u_max}``.
    """
    d = _vector(d, sys.n, "d")
    if not is_controllable(sys, tol):
        raise NotControllableError("b_bar does not have full row rank")
    if not np.any(d):
        return 0.0
    lam = max_gain(sys.b_bar, sys.u_max, d, np.zeros(sys.n), tol)
    if lam is None or lam <= 0:
        raise NumericalFailure("nominal reach LP failed for a controllable system")
    return 1.0 / lam


def _blocked(lam, ms: MalfunctionSplit, d: np.ndarray, tol: Tolerances) -> bool:
    if lam is None:
        return True
    # dimensionless: lam * |d| against the largest achievable rate component
    scale = ms.u_max * float(np.max(np.abs(ms.system.b_bar)))
    return lam * float(np.max(np.abs(d))) <= tol.lambda_min_tol * scale


def disturbed_reach_time(ms: MalfunctionSplit, w, d, tol: Tolerances = DEFAULT_TOL) -> float:
    """Minimal time to reach ``d`` when the lost actuators play the constant ``w``."""
    w = _vector(w, ms.p, "w")
    if np.any(np.abs(w) > ms.u_max * (1 + 1e-12)):
        raise ValidationError("w", f"disturbance exceeds u_max = {ms.u_max}")
    d = _vector(d, ms.system.n, "d")
    if not np.any(d):
        return 0.0
    lam = max_gain(ms.b, ms.u_max, d, ms.c @ w, tol)
    if _blocked(lam, ms, d, tol):
        return INF
    return 1.0 / lam


def disturbance_vertices(p: int, u_max: float):
    """Sign vertices in binary counting order; bit i set means ``w_i = +u_max``."""
    for code in range(2 ** p):
        yield np.array([u_max if (code >> i) & 1 else -u_max for i in range(p)])


def malfunctioning_reach_time(ms: MalfunctionSplit, d, tol: Tolerances = DEFAULT_TOL) -> tuple[float, np.ndarray]:
    """Worst constant disturbance against best response; the worst case is a vertex.

    Returns the reach time and the first (lowest binary code) worst vertex.
    """
    if ms.p > tol.vertex_cap:
        raise VertexBudgetExceeded(f"2^{ms.p} disturbance vertices exceed the cap 2^{tol.vertex_cap}")
    d = _vector(d, ms.system.n, "d")
    worst_t, worst_w = -1.0, None
    for w in disturbance_vertices(ms.p, ms.u_max):
        t = disturbed_reach_time(ms, w, d, tol)
        if t > worst_t + 1e-12 * abs(worst_t):
            worst_t, worst_w = t, w
            if t == INF:
                break
    return worst_t, worst_w


def time_ratio(ms: MalfunctionSplit, d, tol: Tolerances = DEFAULT_TOL) -> float:
    d = _vector(d, ms.system.n, "d")
    if not is_controllable(ms.system, tol):
        raise NotControllableError("b_bar does not have full row rank")
    if not np.any(d):
        return 1.0
    t_m, _ = malfunctioning_reach_time(ms, d, tol)
    if t_m == INF:
        return INF
    return t_m / nominal_reach_time(ms.system, d, tol)


def sweep_ratio(ms: MalfunctionSplit, e1, e2, samples: int, tol: Tolerances = DEFAULT_TOL) -> list[tuple[float, float]]:
    """Time ratio along ``cos(beta) e1 + sin(beta) e2`` at ``samples`` equally spaced angles."""
    n = ms.system.n
    e1 = _vector(e1, n, "e1")
    e2 = _vector(e2, n, "e2")
    if abs(np.linalg.norm(e1) - 1) > 1e-9 or abs(np.linalg.norm(e2) - 1) > 1e-9 or abs(e1 @ e2) > 1e-9:
        raise ValidationError("plane", "e1, e2 must be orthonormal")
    if samples < 4:
        raise ValidationError("samples", "need at least 4 samples")
    out = []
    for k in range(samples):
        beta = 2 * math.pi * k / samples
        out.append((beta, time_ratio(ms, math.cos(beta) * e1 + math.sin(beta) * e2, tol)))
    return out


def _fmt(x: float) -> str:
    return "inf" if x == INF else f"{x:.12g}"


def write_sweep_csv(rows: Sequence[tuple[float, float]], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["beta", "ratio"])
    for beta, ratio in rows:
        writer.writerow([_fmt(beta), _fmt(ratio)])
