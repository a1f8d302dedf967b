"""Bounds and a seeded Monte Carlo run for the s=2, n=m=7, k=(2,2) code over F_{2^7}."""

from __future__ import annotations

import argparse

from gabinterp.experiment import ExperimentConfig, bounds_table, run_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cfg = ExperimentConfig(m=7, s=2, k=(2, 2), t=3, trials=args.trials, seed=args.seed,
                           workers=args.workers, compare=True)
    res = run_experiment(cfg)
    print(bounds_table(res.bounds))
    lo, hi = res.wilson()
    print(f"\nrank-3 errors, {res.trials} trials: {res.errors} failures, rate {res.failure_rate:.3g} "
          f"(95% Wilson [{lo:.3g}, {hi:.3g}]), {res.elapsed:.1f}s")
    c = res.compare
    print(f"R_R fails {c['rr_fails']}, S fails {c['sb_fails']}, rk(Q) deficient {c['q_deficient']}, "
          f"predicate agreement {c['predicates_agree']}/{c['measured']}")


if __name__ == "__main__":
    main()
