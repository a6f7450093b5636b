#!/usr/bin/env python3
"""Print the trials-to-target comparison across all scenarios, plus the
chained-k sweep that locates the most efficient configuration."""

import argparse

from bellodds.bayes import HypothesisPair, kl_per_trial, required_trials
from bellodds.scenarios import (
    chained_pair,
    find_optimal_k,
    ghz_pair,
    hardy_naive_trials,
    hardy_optimize_r,
    hardy_q,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--target-d", type=float, default=1e4, help="target Bayes factor")
    parser.add_argument("--k-max", type=int, default=12, help="largest chained k to scan")
    args = parser.parse_args()
    target = args.target_d

    print(f"Trials needed to reach a Bayes factor of {target:g} (QM assumed correct)\n")
    print(f"{'scenario':<14} {'q':>10} {'r':>10} {'nats/trial':>12} {'trials':>9}")
    rows = [("ghz", ghz_pair()), ("chained-k2", chained_pair(2)), ("chained-k4", chained_pair(4))]
    hardy = hardy_optimize_r("paper", target)
    for name, pair in rows:
        print(
            f"{name:<14} {pair.q:>10.6f} {pair.r:>10.6f} "
            f"{kl_per_trial(pair):>12.6f} {required_trials(pair, target):>9.1f}"
        )
    hardy_rate = kl_per_trial(HypothesisPair(hardy_q(), hardy.r_opt))
    print(
        f"{'hardy-paper':<14} {hardy_q():>10.6f} {hardy.r_opt:>10.6f} "
        f"{hardy_rate:>12.6f} {hardy.n_real:>9.1f}"
    )
    naive = hardy_naive_trials(0.5)
    print(f"{'hardy-naive':<14} {hardy_q():>10.6f} {0.0:>10.6f} {'(unbounded)':>12} {naive:>7d} *")
    print("\n* trials until the all-zero local-realist theory's survival odds drop below 50%\n")

    print(f"Chained sweep, k = 2..{args.k_max}:")
    for k in range(2, args.k_max + 1):
        n = required_trials(chained_pair(k), target)
        print(f"  k={k:<3d} trials={n:8.1f}")
    best_k, best_n = find_optimal_k(target, 2, args.k_max)
    print(f"Most efficient: k={best_k} at {best_n:.1f} trials")


if __name__ == "__main__":
    main()
