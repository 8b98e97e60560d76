#!/usr/bin/env python3
"""Fading sweep of average effective branching factor, printed as a table.

Usage: python3 scripts/run_ebf_sweep.py [--trials N] [--seed S] [--jobs J]
                                        [--m 1,2,3,4,5] [--out sweep.csv]

Defaults match the desk-scale setup: 3 pairs, T=5, on-off power {0,2},
noise 0.1, target [1,1,1], direct/cross mean gains 0.6/0.2.
"""

import argparse
import csv
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from fhtp import FadingConfig, ebf_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--m", default="1,2,3,4,5")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = []
    print(f"{'m':>4} {'trials':>7} {'solved':>7} {'avg_ebf':>9} {'avg_expanded':>13} {'avg_wall_ms':>12}")
    for m in (float(x) for x in args.m.split(",")):
        stats = ebf_experiment(
            FadingConfig(m=m, trials=args.trials, seed=args.seed), jobs=args.jobs
        )
        rows.append(stats)
        print(
            f"{stats.m:>4g} {stats.trials:>7} {stats.solved:>7}"
            f" {stats.avg_ebf:>9.4f} {stats.avg_expanded:>13.1f} {stats.avg_wall_ms:>12.3f}"
        )

    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["m", "trials", "solved", "avg_ebf", "avg_expanded", "avg_wall_ms"])
            for r in rows:
                writer.writerow(
                    [f"{r.m:g}", r.trials, r.solved, f"{r.avg_ebf:.6g}",
                     f"{r.avg_expanded:.6g}", f"{r.avg_wall_ms:.6g}"]
                )
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
