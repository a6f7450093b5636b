#!/usr/bin/env python3
"""Run the sequential experiment for each scenario and print its stopping
statistics under the 100:1 -> 0.01 protocol."""

import argparse

from bellodds.scenarios import ScenarioSpec
from bellodds.simulate import GENERATOR, SimulationConfig, run_replications


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--true-theory", choices=["qm", "lr"], default="qm")
    args = parser.parse_args()

    specs = [
        ScenarioSpec("ghz"),
        ScenarioSpec("chained", k=2),
        ScenarioSpec("chained", k=4),
        ScenarioSpec("hardy"),
        ScenarioSpec("hardy-naive"),
    ]
    print(f"true theory: {args.true_theory}, prior odds 100:1, stop at 0.01 or 1e6")
    print(f"{args.reps} replications each, master seed {args.seed}")
    print(f"streams: {GENERATOR}\n")
    header = f"{'scenario':<14} {'mean stop':>10} {'sd':>8} {'p05':>6} {'p50':>6} {'p95':>6}  decisions"
    print(header)
    for spec in specs:
        config = SimulationConfig(
            scenario=spec,
            true_theory=args.true_theory,
            replications=args.reps,
            max_trials=100_000,
            master_seed=args.seed,
        )
        r = run_replications(config)
        decisions = ", ".join(f"{k}={v}" for k, v in r.decision_counts.items() if v)
        print(
            f"{spec.label():<14} {r.mean_stop:>10.2f} {r.stddev_stop:>8.2f} "
            f"{r.q05:>6.0f} {r.q50:>6.0f} {r.q95:>6.0f}  {decisions}"
        )


if __name__ == "__main__":
    main()
