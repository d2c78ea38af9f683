"""Quantitative resilience, the single-LP ``r_max`` shortcut and verdicts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    MalfunctionSplit,
    ResilienceError,
    SystemSpec,
    Tolerances,
    is_controllable,
    split,
)
from .lp import LpProblem, Status, solve
from .reach import INF, malfunctioning_reach_time

RMAX_TOL = 1e-9
MULTI_ACTUATOR_NOTE = "multi-actuator: sweep-based evidence only"


class MultipleColumnsError(ResilienceError):
    pass


class DegenerateDenominator(ResilienceError):
    pass


class Verdict(enum.Enum):
    RESILIENT = "Resilient"
    NOT_RESILIENT = "NotResilient"
    NOT_CONTROLLABLE = "NotControllable"


def _single(ms: MalfunctionSplit) -> np.ndarray:
    if ms.p != 1:
        raise MultipleColumnsError(f"expected one lost column, got {ms.p}")
    return ms.c[:, 0]


def _lambda_star(b: np.ndarray, c: np.ndarray, u_max: float, tol: Tolerances) -> float:
    if not np.any(c):
        return INF
    m = b.shape[1]
    a = np.hstack([b, -c[:, None]])
    obj = np.zeros(m + 1)
    obj[-1] = 1.0
    lower = np.concatenate([np.full(m, -u_max), [-INF]])
    upper = np.concatenate([np.full(m, u_max), [INF]])
    out = solve(LpProblem(obj, a, np.zeros(b.shape[0]), lower, upper), tol.feas_tol)
    if out.status is Status.INFEASIBLE:
        return -INF
    if out.status is Status.UNBOUNDED:
        return INF
    return out.value


def lambda_star(ms: MalfunctionSplit, tol: Tolerances = DEFAULT_TOL) -> float:
    """Largest gain with which the kept actuators can reproduce the lost column.

    ``max{lam : b @ v = lam * c, |v| <= u_max}`` with ``lam`` free in sign.
    ``inf`` for a zero column.
    """
    return _lambda_star(ms.b, _single(ms), ms.u_max, tol)


def _r_max_from(lam: float, u_max: float) -> float:
    if lam == INF:
        return 1.0
    if lam == -INF:
        return -INF
    den = lam + u_max
    if abs(den) < 1e-12:
        raise DegenerateDenominator("lambda* + u_max vanishes")
    return (lam - u_max) / den


def r_max(ms: MalfunctionSplit, tol: Tolerances = DEFAULT_TOL) -> float:
    return _r_max_from(lambda_star(ms, tol), ms.u_max)


def _verdict_single(r: float) -> Verdict:
    return Verdict.RESILIENT if RMAX_TOL < r <= 1 + RMAX_TOL else Verdict.NOT_RESILIENT


def resilience_verdict(ms: MalfunctionSplit, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    """Resilience of the plant to losing the columns in ``ms``.

    With several lost columns the test only checks that each lost column
    stays reachable against the worst disturbance; it is a heuristic, see
    ``MULTI_ACTUATOR_NOTE``.
    """
    if not is_controllable(ms.system, tol):
        return Verdict.NOT_CONTROLLABLE
    if ms.p == 1:
        try:
            return _verdict_single(r_max(ms, tol))
        except DegenerateDenominator:
            return Verdict.NOT_RESILIENT
    for j in range(ms.p):
        t, _ = malfunctioning_reach_time(ms, ms.c[:, j], tol)
        if t == INF:
            return Verdict.NOT_RESILIENT
    return Verdict.RESILIENT


def quantitative_resilience(ms: MalfunctionSplit, tol: Tolerances = DEFAULT_TOL) -> float:
    """Inverse of the worst ratio of reach times, in ``[0, 1]``."""
    _single(ms)
    if resilience_verdict(ms, tol) is not Verdict.RESILIENT:
        return 0.0
    return min(r_max(ms, tol), 1.0)


@dataclass(frozen=True)
class ColumnResilience:
    column_index: int
    lambda_star: float
    r_max: float
    verdict: Verdict
    r_q: float
    worst_vertex: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "column_index": self.column_index,
            "lambda_star": _json_num(self.lambda_star),
            "r_max": _json_num(self.r_max),
            "verdict": self.verdict.value,
            "r_q": _json_num(self.r_q),
            "worst_vertex": [_json_num(w) for w in self.worst_vertex],
        }


@dataclass(frozen=True)
class ResilienceReport:
    controllable: bool
    per_column: tuple[ColumnResilience, ...]

    def to_dict(self) -> dict:
        return {"controllable": self.controllable, "per_column": [c.to_dict() for c in self.per_column]}

    def column(self, attr: str) -> list:
        return [getattr(c, attr) for c in self.per_column]

    def min_r_q(self) -> float:
        return min(self.column("r_q"))


def _json_num(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.12g}")


def column_resilience(sys: SystemSpec, j: int, controllable: bool, tol: Tolerances = DEFAULT_TOL) -> ColumnResilience:
    c = sys.b_bar[:, j]
    if sys.num_inputs == 1:
        # nothing left to compensate with
        lam = INF if not np.any(c) else 0.0
        r = _r_max_from(lam, sys.u_max)
        verdict = Verdict.NOT_CONTROLLABLE if not controllable else _verdict_single(r)
        rq = 1.0 if verdict is Verdict.RESILIENT else 0.0
        return ColumnResilience(j, lam, r, verdict, rq, (-sys.u_max,))
    ms = split(sys, [j])
    lam = lambda_star(ms, tol)
    try:
        r = _r_max_from(lam, sys.u_max)
        verdict = _verdict_single(r)
    except DegenerateDenominator:
        r, verdict = -INF, Verdict.NOT_RESILIENT
    if not controllable:
        verdict = Verdict.NOT_CONTROLLABLE
    rq = min(r, 1.0) if verdict is Verdict.RESILIENT else 0.0
    _, w = malfunctioning_reach_time(ms, c, tol)
    return ColumnResilience(j, lam, r, verdict, rq, tuple(float(v) for v in w))


def full_report(sys: SystemSpec, tol: Tolerances = DEFAULT_TOL) -> ResilienceReport:
    """Resilience record for the loss of each single column in turn."""
    controllable = is_controllable(sys, tol)
    cols = tuple(column_resilience(sys, j, controllable, tol) for j in range(sys.num_inputs))
    return ResilienceReport(controllable, cols)


def format_table(report: ResilienceReport) -> str:
    """Human-readable table, 1-based column numbers, 4 significant digits."""

    def num(x):
        return ("inf" if x > 0 else "-inf") if math.isinf(x) else f"{x:.4g}"

    lines = [f"controllable: {'yes' if report.controllable else 'no'}",
             f"{'column':>6}  {'lambda*':>10}  {'r_max':>10}  {'verdict':<15}  {'r_q':>8}"]
    for c in report.per_column:
        lines.append(f"{c.column_index + 1:>6}  {num(c.lambda_star):>10}  {num(c.r_max):>10}  "
                     f"{c.verdict.value:<15}  {num(c.r_q):>8}")
    return "\n".join(lines)
