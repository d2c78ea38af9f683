"""Sampled checks of the polytope theorems on random zonotopes.

    python scripts/geometry_checks.py --cases 50 --seed 0
"""

import argparse

from quantres.cli import verify_geometry


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cases", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dirs", type=int, default=720)
    args = parser.parse_args()
    for name, k in verify_geometry(args.seed, args.cases, args.dirs).items():
        print(f"{name}: {k}/{args.cases}")


if __name__ == "__main__":
    main()
