"""Variance collapse on the shifted disks D - i kappa.

Writes a CSV with the sample variance, its closed form (1 - kappa^2)/2, the
reconstructed Gross area and rho for each kappa.

    python3 scripts/sweep_shifted_disk.py --out results/shifted_disk.csv
"""
import argparse
from pathlib import Path

from planar_skorokhod.symmetrize import variance_collapse_sweep, write_sweep_csv


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--kappas", default="0,0.25,0.5,0.75,0.9,0.95,0.99")
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--terms", type=int, default=256)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="results/shifted_disk.csv")
    args = p.parse_args()

    kappas = [float(k) for k in args.kappas.split(",")]
    rows = variance_collapse_sweep("shifted_disk", kappas, n=args.n, seed=args.seed, N=args.terms)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_sweep_csv(rows, args.out)
    print(f"{'kappa':>6} {'var':>10} {'closed':>10} {'z':>6} {'area_B':>8} {'rho':>7} {'lower':>7}")
    for r in rows:
        z = (r.variance - r.closed_form_variance) / r.variance_stderr
        print(f"{r.param:6.3f} {r.variance:10.6f} {r.closed_form_variance:10.6f} {z:6.2f} "
              f"{r.area_B:8.4f} {r.rho:7.4f} {1 - r.param**2:7.4f}")


if __name__ == "__main__":
    main()
