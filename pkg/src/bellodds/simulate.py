"""Monte Carlo sequential experiments: per-trial odds updates to a stopping
decision, replicated over independent random substreams.

The stopping protocol generalizes the running example of a local realist who
starts at 100:1 odds in their favor and concedes at 0.01: the experiment
stops as soon as the LR:QM odds reach either threshold.  Each replication
draws from its own counter-based substream, so results are a pure function
of the configuration no matter how replications are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bayes import HypothesisPair, OddsRatio, TrialTally, IndistinguishableError, kl_per_trial, log_bayes_factor
from .scenarios import ScenarioSpec, scenario_pair

__all__ = [
    "GENERATOR",
    "INCONCLUSIVE",
    "LR",
    "LR_REJECTED",
    "QM",
    "QM_REJECTED",
    "SimulationConfig",
    "StoppingReport",
    "Trajectory",
    "TrajectorySummary",
    "expected_stop_estimate",
    "replication_summaries",
    "run_replications",
    "run_trajectory",
    "summarize",
    "trial_stream",
]

QM = "qm"
LR = "lr"

LR_REJECTED = "lr_rejected"
QM_REJECTED = "qm_rejected"
INCONCLUSIVE = "inconclusive"

#: Identification of the random stream construction, echoed in CLI output.
GENERATOR = "numpy.random.Philox keyed by SeedSequence(master_seed, spawn_key=(replication_index,))"

_BLOCK = 1024


@dataclass(frozen=True)
class SimulationConfig:
    """Everything a sequential experiment needs, thresholds included.

    The experiment stops once the LR:QM odds are <= lower_threshold (LR
    rejected) or >= upper_threshold (QM rejected), checked after each trial's
    update.  pair_override substitutes a synthetic hypothesis pair for the
    scenario's; hardy_target_d only affects how a "hardy" scenario resolves
    its optimized r1.
    """

    scenario: ScenarioSpec
    true_theory: str = QM
    prior_odds: float = 100.0
    lower_threshold: float = 0.01
    upper_threshold: float = 1e6
    max_trials: int = 100_000
    master_seed: int = 0
    replications: int = 1000
    hardy_target_d: float = 1e4
    pair_override: HypothesisPair | None = None

    def __post_init__(self) -> None:
        if self.true_theory not in (QM, LR):
            raise ValueError(f"true_theory must be {QM!r} or {LR!r}, got {self.true_theory!r}")
        if not 0.0 < self.lower_threshold < self.prior_odds < self.upper_threshold:
            raise ValueError(
                "need 0 < lower_threshold < prior_odds < upper_threshold, got "
                f"{self.lower_threshold!r} / {self.prior_odds!r} / {self.upper_threshold!r}"
            )
        if self.max_trials < 1:
            raise ValueError(f"max_trials must be >= 1, got {self.max_trials}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(f"master_seed must be a 64-bit nonnegative integer, got {self.master_seed!r}")
        pair = self.resolved_pair()
        if pair.q == pair.r and pair.q in (0.0, 1.0):
            raise ValueError("degenerate pair q == r in {0, 1}: every trial would falsify both theories")

    def resolved_pair(self) -> HypothesisPair:
        if self.pair_override is not None:
            return self.pair_override
        return scenario_pair(self.scenario, self.hardy_target_d).pair


@dataclass
class Trajectory:
    """One sequential experiment: outcomes, the running log Bayes factor, and
    how it ended.  stop_trial counts performed trials; it equals max_trials
    when no threshold was reached."""

    outcomes: np.ndarray
    cumulative_log_d: np.ndarray
    decision: str
    stop_trial: int


@dataclass(frozen=True)
class TrajectorySummary:
    """The parts of a trajectory the aggregate report needs."""

    replication: int
    stop_trial: int
    decision: str
    final_log_d: float


@dataclass(frozen=True)
class StoppingReport:
    """Stopping statistics over all replications.

    mean_log_d_per_trial pools evidence across replications (total log
    factor over total trials), which converges to the per-trial KL when QM
    is true; it is +inf for scenarios where a single outcome can falsify LR.
    """

    mean_stop: float
    stddev_stop: float
    q05: float
    q50: float
    q95: float
    decision_counts: dict[str, int]
    mean_log_d_per_trial: float


def trial_stream(master_seed: int, replication_index: int) -> np.random.Generator:
    """Independent substream for one replication.

    Philox is counter-based, keyed here by a SeedSequence over
    (master_seed, replication_index), so any replication can be generated on
    any worker, in any order, with identical results.
    """
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(replication_index,))
    return np.random.Generator(np.random.Philox(ss))


def run_trajectory(config: SimulationConfig, replication_index: int) -> Trajectory:
    """Simulate one sequential experiment under the configured true theory.

    Each trial is "yes" with probability q (true_theory "qm") or r ("lr");
    the cumulative log Bayes factor moves by ln(q/r) on "yes" and
    ln((1-q)/(1-r)) on "no".  The walk stops the first time the implied odds
    reach a threshold; an outcome one theory declared impossible settles the
    experiment on the spot.
    """
    if not 0 <= replication_index < config.replications:
        raise ValueError(
            f"replication_index must be in [0, {config.replications}), got {replication_index}"
        )
    pair = config.resolved_pair()
    p_true = pair.q if config.true_theory == QM else pair.r
    step_yes = log_bayes_factor(pair, TrialTally(1, 1)).log_value
    step_no = log_bayes_factor(pair, TrialTally(1, 0)).log_value
    hi = math.log(config.prior_odds / config.lower_threshold)
    lo = math.log(config.prior_odds / config.upper_threshold)
    rng = trial_stream(config.master_seed, replication_index)

    if math.isfinite(step_yes) and math.isfinite(step_no):
        return _run_finite(config, rng, p_true, step_yes, step_no, lo, hi)
    return _run_with_falsifiers(config, rng, p_true, step_yes, step_no, lo, hi)


def _run_finite(config, rng, p_true, step_yes, step_no, lo, hi) -> Trajectory:
    """Vectorized walk for the common case of two finite step sizes."""
    outcome_parts: list[np.ndarray] = []
    cum_parts: list[np.ndarray] = []
    carry = 0.0
    remaining = config.max_trials
    decision = INCONCLUSIVE
    while remaining > 0:
        block = min(_BLOCK, remaining)
        yes = rng.random(block) < p_true
        cum = carry + np.cumsum(np.where(yes, step_yes, step_no))
        crossed = (cum >= hi) | (cum <= lo)
        if crossed.any():
            stop = int(np.argmax(crossed))
            outcome_parts.append(yes[: stop + 1])
            cum_parts.append(cum[: stop + 1])
            decision = LR_REJECTED if cum[stop] >= hi else QM_REJECTED
            break
        outcome_parts.append(yes)
        cum_parts.append(cum)
        carry = float(cum[-1])
        remaining -= block
    outcomes = np.concatenate(outcome_parts) if outcome_parts else np.zeros(0, dtype=bool)
    cumulative = np.concatenate(cum_parts) if cum_parts else np.zeros(0)
    return Trajectory(outcomes, cumulative, decision, len(outcomes))


def _run_with_falsifiers(config, rng, p_true, step_yes, step_no, lo, hi) -> Trajectory:
    """Per-trial walk for pairs where some outcome carries infinite evidence."""
    outcomes: list[bool] = []
    cums: list[float] = []
    cum = 0.0
    decision = INCONCLUSIVE
    for _ in range(config.max_trials):
        yes = bool(rng.random() < p_true)
        step = step_yes if yes else step_no
        outcomes.append(yes)
        if math.isinf(step):
            cums.append(step)
            decision = LR_REJECTED if step > 0 else QM_REJECTED
            break
        cum += step
        cums.append(cum)
        if cum >= hi:
            decision = LR_REJECTED
            break
        if cum <= lo:
            decision = QM_REJECTED
            break
    return Trajectory(np.asarray(outcomes, dtype=bool), np.asarray(cums), decision, len(outcomes))


def replication_summaries(config: SimulationConfig) -> list[TrajectorySummary]:
    """Run every replication and keep only what the report needs."""
    out = []
    for i in range(config.replications):
        t = run_trajectory(config, i)
        final = float(t.cumulative_log_d[-1]) if t.stop_trial else 0.0
        out.append(TrajectorySummary(i, t.stop_trial, t.decision, final))
    return out


def summarize(summaries: list[TrajectorySummary]) -> StoppingReport:
    """Aggregate stopping statistics; order-insensitive in the input list."""
    if not summaries:
        raise ValueError("nothing to summarize")
    stops = np.array([s.stop_trial for s in summaries], dtype=np.int64)
    finals = np.array([s.final_log_d for s in summaries])
    counts = {LR_REJECTED: 0, QM_REJECTED: 0, INCONCLUSIVE: 0}
    for s in summaries:
        counts[s.decision] += 1
    q05, q50, q95 = (float(x) for x in np.percentile(stops, [5.0, 50.0, 95.0]))
    return StoppingReport(
        mean_stop=float(stops.mean()),
        stddev_stop=float(stops.std(ddof=1)) if len(stops) > 1 else 0.0,
        q05=q05,
        q50=q50,
        q95=q95,
        decision_counts=counts,
        mean_log_d_per_trial=float(finals.sum() / stops.sum()),
    )


def run_replications(config: SimulationConfig) -> StoppingReport:
    """All replications, aggregated.  Deterministic given the configuration:
    substreams are keyed by replication index and the aggregation does not
    depend on completion order."""
    return summarize(replication_summaries(config))


def expected_stop_estimate(pair: HypothesisPair, prior: OddsRatio, lower_threshold: float) -> float:
    """Drift-based estimate of the LR-rejection stopping time when QM is true:
    ln(prior / lower_threshold) / KL.  Ignores the overshoot past the
    threshold, so it slightly underestimates the mean stopping time."""
    if not (math.isfinite(prior.ratio) and prior.ratio > 0.0):
        raise ValueError(f"prior odds must be finite and positive, got {prior.ratio!r}")
    if not 0.0 < lower_threshold <= prior.ratio:
        raise ValueError(
            f"lower_threshold must be in (0, prior], got {lower_threshold!r} vs prior {prior.ratio!r}"
        )
    kl = kl_per_trial(pair)
    if kl == 0.0:
        raise IndistinguishableError("q == r: the odds never drift")
    return math.log(prior.ratio / lower_threshold) / kl
