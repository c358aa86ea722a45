"""Gagliardo / Fourier ratio on pure modes over a range of s and grid sizes.

At s = 1/2 the ratio is flat in k (and tends to 2 pi^2); elsewhere it drifts
with k, so the two seminorms are comparable but not proportional mode by mode.

    python3 scripts/eta_scan.py
"""
import argparse

from planar_skorokhod.sobolev import eta_constant


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--s", default="0.1,0.25,0.4,0.5,0.6,0.75,0.9")
    p.add_argument("--grids", default="1024,4096,16384")
    p.add_argument("--modes", type=int, default=6)
    args = p.parse_args()

    grids = [int(g) for g in args.grids.split(",")]
    print("s      " + "".join(f"{'G=' + str(g):>22}" for g in grids))
    for s in (float(x) for x in args.s.split(",")):
        cells = []
        for G in grids:
            est = eta_constant(s, G, args.modes)
            cells.append(f"{est.mean:11.4f} ({est.spread:7.2%})")
        print(f"{s:<6g} " + "".join(f"{c:>22}" for c in cells))


if __name__ == "__main__":
    main()
