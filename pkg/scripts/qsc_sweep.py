"""Block-error rate over the q-ary symmetric rank channel, written as CSV for external plotting."""

from __future__ import annotations

import argparse
import sys

from gabinterp.experiment import ExperimentConfig, sweep_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=10_000, help="trials per point")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--points", default="0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    cfg = ExperimentConfig(m=7, s=2, k=(2, 2), channel="qsc", trials=args.trials, seed=args.seed,
                           workers=args.workers)
    text = sweep_csv(cfg, [float(p) for p in args.points.split(",")])
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
