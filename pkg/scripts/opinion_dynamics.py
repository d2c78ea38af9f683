"""Opinion-dynamics case study: per-channel resilience, target ratios and sweeps.

    python scripts/opinion_dynamics.py --out results/
"""

import argparse
from pathlib import Path

import numpy as np

from quantres.core import split
from quantres.reach import sweep_ratio, time_ratio, write_sweep_csv
from quantres.resilience import format_table, full_report
from quantres.scenarios import opinion_example


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--samples", type=int, default=720)
    args = parser.parse_args()

    sys = opinion_example()
    report = full_report(sys)
    print(format_table(report))
    print("1/r_q:", np.round([1 / r for r in report.column("r_q")], 2))
    for name, d in (("consensus", [1, 1]), ("polarization", [-1, 1])):
        ratios = [time_ratio(split(sys, [j]), d) for j in range(sys.num_inputs)]
        print(f"t({name} {d}):", np.round(ratios, 2))

    args.out.mkdir(parents=True, exist_ok=True)
    for channel in (0, 2):
        rows = sweep_ratio(split(sys, [channel]), [1, 0], [0, 1], args.samples)
        path = args.out / f"opinion_sweep_channel{channel + 1}.csv"
        with open(path, "w", newline="") as fh:
            write_sweep_csv(rows, fh)
        print(f"channel {channel + 1}: max t(d) = {max(r for _, r in rows):.4g} -> {path}")


if __name__ == "__main__":
    main()
