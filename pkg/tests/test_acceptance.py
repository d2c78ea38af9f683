"""Exit criteria: paper-reported values and property suites at their stated tolerances.

Each test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".
"""

import math

import numpy as np
import pytest

from conftest import random_direction, random_system, record
from quantres import geometry as g
from quantres.cli import verify_geometry
from quantres.core import SystemSpec, split
from quantres.reach import (
    INF,
    disturbance_vertices,
    disturbed_reach_time,
    malfunctioning_reach_time,
    nominal_reach_time,
    sweep_ratio,
    time_ratio,
)
from quantres.resilience import Verdict, full_report, lambda_star, r_max, resilience_verdict
from quantres.scenarios import fit_scale, opinion_example, spacecraft_bbar, spacecraft_example

pytestmark = pytest.mark.acceptance

OPINION_RMAX = [0.02, 0.04, 0.14, 0.14, 0.91]
OPINION_INV_RQ = [39.5, 26.3, 7.2, 7.2, 1.1]
OPINION_T_CONSENSUS = [39.5, 26.3, 1.0, 1.0, 1.1]
OPINION_T_POLAR = [2.6, 1.7, 7.1, 7.1, 1.1]
SPACECRAFT_RMAX = [-0.2, 0.34, 0.9, -0.004, -0.38, 0.15, 0.83, -0.32, 0.71, -0.06, 0.24, 0.2, -0.5, 0.5]
SPACECRAFT_RQ = [0, 0.34, 0.9, 0, 0, 0.15, 0.83, 0, 0.71, 0, 0.24, 0.2, 0, 0.5]
SPACECRAFT_ZERO_RQ = {1, 4, 5, 8, 10, 13}  # 1-based
SPACECRAFT_T = [1.1, 1.2, 1.1, 1, INF, 1, 151.1, INF, 151.1, INF, 151.1, 151.1, INF, 151.1]


def _fmt(values):
    return "[" + " ".join("inf" if v == INF else f"{v:.4g}" for v in values) + "]"


def _misses(got, want, tol):
    return [j + 1 for j, (a, b) in enumerate(zip(got, want)) if not abs(a - b) <= tol]


def test_c1_opinion_rmax_rq():
    rep = full_report(opinion_example())
    rmax, rq = rep.column("r_max"), rep.column("r_q")
    miss = sorted(set(_misses(rmax, OPINION_RMAX, 0.005)) | set(_misses(rq, OPINION_RMAX, 0.005)))
    all_res = all(v is Verdict.RESILIENT for v in rep.column("verdict"))
    ok = record(1, not miss and all_res,
                f"opinion r_max={_fmt(rmax)} r_q={_fmt(rq)} vs {OPINION_RMAX} (+-0.005); "
                f"all resilient={all_res}; off-tolerance channels={miss}")
    assert ok


def test_c2_opinion_inverse_rq():
    inv = [1 / v for v in full_report(opinion_example()).column("r_q")]
    miss = _misses(inv, OPINION_INV_RQ, 0.05)
    assert record(2, not miss, f"1/r_q={_fmt(inv)} vs {OPINION_INV_RQ} (+-0.05); misses={miss}")


def test_c3_opinion_targets():
    sys = opinion_example()
    cons = [time_ratio(split(sys, [j]), [1, 1]) for j in range(5)]
    pol = [time_ratio(split(sys, [j]), [-1, 1]) for j in range(5)]
    miss = _misses(cons, OPINION_T_CONSENSUS, 0.05) + _misses(pol, OPINION_T_POLAR, 0.05)
    assert record(3, not miss, f"t(1,1)={_fmt(cons)} t(-1,1)={_fmt(pol)} (+-0.05); misses={miss}")


def _sweep_peak(channel):
    ms = split(opinion_example(), [channel])
    rows = sweep_ratio(ms, [1, 0], [0, 1], 720)
    peak = max(r for _, r in rows)
    c = ms.c[:, 0]
    angle = math.atan2(c[1], c[0]) % math.pi
    near = []
    for beta, r in rows:
        gap = abs(beta % math.pi - angle)
        if min(gap, math.pi - gap) <= 2 * math.pi / 720 + 1e-12:
            near.append(r)
    # the peak may sit on a flat arc; it must be reached next to +-C
    return peak, max(near) >= peak - 1e-6


def test_c4_opinion_sweep():
    peak1, near1 = _sweep_peak(0)
    peak3, near3 = _sweep_peak(2)
    ok = abs(peak1 - 39.5) <= 0.1 and near1 and abs(peak3 - 7.1) <= 0.05 and near3
    assert record(4, ok, f"channel 1 max={peak1:.4f} near +-C={near1} (39.5+-0.1); "
                         f"channel 3 max={peak3:.4f} near +-C={near3} (7.1+-0.05)")


def _spacecraft_check(sys, label):
    rep = full_report(sys)
    rmax, rq = rep.column("r_max"), rep.column("r_q")
    miss = _misses(rmax, SPACECRAFT_RMAX, 0.02)
    signs = [j + 1 for j, (a, b) in enumerate(zip(rmax, SPACECRAFT_RMAX)) if (a > 0) != (b > 0)]
    miss_q = _misses(rq, SPACECRAFT_RQ, 0.02)
    zeros = {j + 1 for j, v in enumerate(rq) if v == 0}
    ok = not miss and not signs and not miss_q and zeros == SPACECRAFT_ZERO_RQ
    detail = (f"{label} r_max={_fmt(rmax)}; off-tolerance={miss}; sign mismatches={signs}; "
              f"r_q off-tolerance={miss_q}; zero set={sorted(zeros)} vs {sorted(SPACECRAFT_ZERO_RQ)}")
    return ok, detail


def test_c5_spacecraft_rmax():
    ok, detail = _spacecraft_check(spacecraft_example().printed_bbar, "printed B")
    assert record(5, ok, detail)


def test_c6_spacecraft_maneuver():
    ex = spacecraft_example()
    t = [time_ratio(split(ex.printed_bbar, [j]), ex.target_distance_d) for j in range(14)]
    bad = []
    for j, (got, want) in enumerate(zip(t, SPACECRAFT_T)):
        if want == INF:
            good = got == INF
        elif abs(want - 1) <= 0.25:
            good = abs(got - want) <= 0.1
        else:
            good = abs(got - want) <= 0.01 * want
        if not good:
            bad.append(j + 1)
    assert record(6, not bad, f"t(d)={_fmt(t)} vs {_fmt(SPACECRAFT_T)}; misses={bad}")


def test_c7_appendix_reconstruction():
    ex = spacecraft_example()
    printed = ex.printed_bbar.b_bar
    rebuilt = spacecraft_bbar(ex.initial)
    s = fit_scale(printed, rebuilt)
    fitted = s * rebuilt
    pattern = np.array_equal(printed != 0, np.abs(fitted) > 0)
    big = np.abs(printed) >= 0.5e-6
    rel = np.abs(fitted[big] - printed[big]) / np.abs(printed[big])
    where = [(int(i) + 1, int(j) + 1) for i, j in np.argwhere(big)[rel > 0.10]]
    ok_res, detail = _spacecraft_check(SystemSpec(rebuilt), "rebuilt B")
    ok = pattern and not where and ok_res
    assert record(7, ok, f"scale={s:.4g}; zero pattern exact={pattern}; max rel err={rel.max():.3f}; "
                         f"entries >10% off={where}; {detail}")


def test_c8a_homogeneity():
    rng = np.random.default_rng(8001)
    worst = 0.0
    for _ in range(200):
        sys = random_system(rng)
        ms = split(sys, [int(rng.integers(sys.num_inputs))])
        d = rng.standard_normal(sys.n)
        s = rng.uniform(0.1, 10) * rng.choice([-1, 1])
        t_n, t_ns = nominal_reach_time(sys, d), nominal_reach_time(sys, s * d)
        worst = max(worst, abs(t_ns - abs(s) * t_n) / (abs(s) * t_n))
        t_m, _ = malfunctioning_reach_time(ms, d)
        t_ms, _ = malfunctioning_reach_time(ms, s * d)
        if t_m == INF or t_ms == INF:
            worst = max(worst, 0.0 if t_m == t_ms else INF)
        else:
            worst = max(worst, abs(t_ms - abs(s) * t_m) / (abs(s) * t_m))
    assert record("8a", worst <= 1e-7, f"homogeneity over 200 triples, worst rel err={worst:.2e} (<=1e-7)")


def test_c8b_bang_bang_dominance():
    rng = np.random.default_rng(8002)
    worst = -INF
    for _ in range(200):
        sys = random_system(rng)
        p = int(rng.integers(1, min(3, sys.num_inputs - 1) + 1))
        ms = split(sys, sorted(rng.choice(sys.num_inputs, size=p, replace=False)))
        d = random_direction(rng, sys.n)
        top, _ = malfunctioning_reach_time(ms, d)
        w = rng.uniform(-1, 1, p) * ms.u_max * 0.999
        t = disturbed_reach_time(ms, w, d)
        if top != INF:
            worst = max(worst, t - top)
        elif t == INF:
            worst = max(worst, 0.0)
    assert record("8b", worst <= 1e-9, f"200 interior disturbances, max excess over vertex max={worst:.2e} (<=1e-9)")


def test_c8c_shortcut_equivalence():
    rng = np.random.default_rng(8003)
    worst, done = 0.0, 0
    while done < 50:
        sys = random_system(rng, extra=int(rng.integers(2, 4)))
        ms = split(sys, [int(rng.integers(sys.num_inputs))])
        if resilience_verdict(ms) is not Verdict.RESILIENT:
            continue
        c = ms.c[:, 0]
        t_m, _ = malfunctioning_reach_time(ms, c)
        ratio = nominal_reach_time(sys, c) / t_m
        worst = max(worst, abs(r_max(ms) - ratio) / ratio)
        done += 1
    assert record("8c", worst <= 1e-6, f"r_max = T_N*(C)/T_M*(C) on 50 resilient systems, worst rel err={worst:.2e}")


def test_c8d_geometry_theorems():
    counts = verify_geometry(seed=8004, cases=50, n_dirs=720, grid=16)
    ok = all(v == 50 for v in counts.values())
    assert record("8d", ok, "geometry checks on 50 random 2-D instances, 720 directions: "
                  + ", ".join(f"{k} {v}/50" for k, v in counts.items()))


def test_c8e_micro_system():
    sys = SystemSpec(np.array([[1.0, 0.0, 0.5], [0.0, 1.0, 0.0]]), 1.0)
    ms = split(sys, [2])
    got = {
        "lambda*": (lambda_star(ms), 2.0),
        "r_max": (r_max(ms), 1 / 3),
        "T_N*": (nominal_reach_time(sys, [1, 0]), 2 / 3),
        "T_M*": (malfunctioning_reach_time(ms, [1, 0])[0], 2.0),
        "t": (time_ratio(ms, [1, 0]), 3.0),
    }
    ok = all(abs(a - b) <= 1e-9 for a, b in got.values())
    assert record("8e", ok, "micro system " + ", ".join(f"{k}={a:.12g}" for k, (a, _) in got.items()))
