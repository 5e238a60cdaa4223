#!/usr/bin/env python3
"""Spearman footrule of every interval metric against the bundled human
oracle ranking, plus the Monte-Carlo random-metric baseline."""

import argparse

from agerec.interval_metrics import (
    MetricConfig,
    load_default_study,
    load_study,
    run_metric_study,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--study", default="default",
                        help="study JSONL path, or 'default' for the "
                             "bundled one")
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--beta", type=float, default=1.0 / 3.0)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    study = (load_default_study() if args.study == "default"
             else load_study(args.study))
    config = MetricConfig(alpha=args.alpha, beta=args.beta)
    rows = run_metric_study(study, config=config,
                            random_trials=args.trials, seed=args.seed)
    print(f"reference range: [{study.reference.lo}, {study.reference.hi}]  "
          f"hypotheses: {len(study.hypotheses)}  seed: {args.seed}")
    print(f"{'metric':<14}footrule S")
    for name, s in rows:
        print(f"{name:<14}{s:.3f}")


if __name__ == "__main__":
    main()
