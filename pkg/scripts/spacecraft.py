"""Low-thrust spacecraft case study on the printed matrix and on the rebuilt one.

    python scripts/spacecraft.py
"""

import numpy as np

from quantres.core import SystemSpec, split
from quantres.reach import time_ratio
from quantres.resilience import format_table, full_report
from quantres.scenarios import fit_scale, spacecraft_bbar, spacecraft_example


def describe(label, sys, d):
    print(f"== {label}")
    print(format_table(full_report(sys)))
    t = [time_ratio(split(sys, [j]), d) for j in range(sys.num_inputs)]
    print("t(d):", " ".join("inf" if np.isinf(v) else f"{v:.3g}" for v in t))


def main():
    ex = spacecraft_example()
    d = ex.target_distance_d
    describe("printed matrix", ex.printed_bbar, d)

    rebuilt = spacecraft_bbar(ex.initial)
    s = fit_scale(ex.printed_bbar.b_bar, rebuilt)
    print(f"\nfitted scale printed/rebuilt = {s:.6g}")
    with np.printoptions(precision=2, suppress=True, linewidth=160):
        print(s * rebuilt * 1e6)
    describe("rebuilt from orbital elements", SystemSpec(rebuilt), d)


if __name__ == "__main__":
    main()
