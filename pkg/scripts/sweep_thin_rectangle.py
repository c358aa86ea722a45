"""Thin rectangles of fixed area a: Rectangle(a/(2b), b/2) for growing b.

Besides the Monte Carlo sweep, prints the two-atom prediction for the Gross
area at the same truncation and the truncation needed for the two-atom area
to reach a. This is the reason the reconstructed area falls well below a for
b >= 4.

    python3 scripts/sweep_thin_rectangle.py --bs 1,2,4,8,16
"""
import argparse
import math
from pathlib import Path

import numpy as np

from planar_skorokhod.symmetrize import variance_collapse_sweep, write_sweep_csv


def two_atom_area(h, N):
    odd = np.arange(1, N + 1, 2)
    return 16 * h**2 / math.pi * float(np.sum(1.0 / odd))


def terms_needed(h, a):
    # sum_{odd n <= N} 1/n ~ (ln N + gamma + 2 ln 2) / 2
    target = a * math.pi / (16 * h**2)
    return math.exp(2 * target - np.euler_gamma - 2 * math.log(2))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--bs", default="1,2,4,8,16")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--terms", type=int, default=256)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="results/thin_rectangle.csv")
    args = p.parse_args()

    bs = [float(b) for b in args.bs.split(",")]
    rows = variance_collapse_sweep("thin_rectangle", bs, n=args.n, eps=args.eps, seed=args.seed,
                                   N=args.terms, a=args.a)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_sweep_csv(rows, args.out)
    print(f"{'b':>5} {'var':>11} {'area_B':>9} {'two-atom':>9} {'log10 N for a':>14}")
    for r in rows:
        h = args.a / (2 * r.param)
        need = terms_needed(h, args.a)
        print(f"{r.param:5g} {r.variance:11.3e} {r.area_B:9.4f} {two_atom_area(h, args.terms):9.4f} "
              f"{math.log10(need) if need < 1e300 else float('inf'):14.1f}")


if __name__ == "__main__":
    main()
