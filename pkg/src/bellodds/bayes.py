"""Log-domain Bayesian evidence arithmetic for rival Bernoulli hypotheses.

Two theories assign different probabilities to the "yes" outcome of a
repeated yes/no experiment: q under quantum mechanics (QM) and r under the
best local-realist (LR) counter-theory.  Everything here works with the
natural log of the QM:LR likelihood ratio so that evidence from millions of
trials neither overflows nor underflows, and so that evidence from
independent trial blocks adds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BothFalsifiedError",
    "HypothesisPair",
    "IndistinguishableError",
    "InfiniteInformationError",
    "LogBayesFactor",
    "OddsRatio",
    "TrialTally",
    "binomial_log_likelihood",
    "kl_per_trial",
    "log_bayes_factor",
    "required_trials",
    "required_trials_ceil",
    "update_odds",
]

# math.exp raises OverflowError above this instead of returning inf
_EXP_MAX = 709.0


class BothFalsifiedError(ValueError):
    """The observed data is impossible under both hypotheses."""


class InfiniteInformationError(ValueError):
    """The LR hypothesis assigns probability 0 to an outcome QM can produce,
    so a single trial may carry unbounded evidence."""


class IndistinguishableError(ValueError):
    """q == r: no amount of data can separate the hypotheses."""


@dataclass(frozen=True)
class HypothesisPair:
    """Per-trial "yes" probabilities under the two rival theories.

    q is the quantum prediction, r the local-realist one.  Both live in
    [0, 1]; the endpoints are legal and handled with the 0^0 = 1 convention
    throughout.
    """

    q: float
    r: float

    def __post_init__(self) -> None:
        for name, p in (("q", self.q), ("r", self.r)):
            if not 0.0 <= p <= 1.0:  # also rejects NaN
                raise ValueError(f"{name} must be a probability in [0, 1], got {p!r}")


@dataclass(frozen=True)
class TrialTally:
    """m "yes" results out of n trials."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 0 or not 0 <= self.m <= self.n:
            raise ValueError(f"need 0 <= m <= n, got n={self.n}, m={self.m}")


@dataclass(frozen=True)
class LogBayesFactor:
    """Natural log of the QM:LR likelihood ratio for some observed data.

    +inf means the data is impossible under LR (local realism falsified
    outright), -inf the mirror image for QM.  Finite values add across
    independent trial blocks.
    """

    log_value: float

    @property
    def factor(self) -> float:
        """The ratio itself; for display only, may overflow to inf."""
        if self.log_value >= _EXP_MAX:
            return math.inf
        return math.exp(self.log_value)

    def __add__(self, other: "LogBayesFactor") -> "LogBayesFactor":
        a, b = self.log_value, other.log_value
        if math.isinf(a) and math.isinf(b) and a != b:
            raise BothFalsifiedError("each block falsified a different hypothesis")
        return LogBayesFactor(a + b)


@dataclass(frozen=True)
class OddsRatio:
    """LR:QM betting odds.  0 means LR is dead, +inf means QM is dead."""

    ratio: float

    def __post_init__(self) -> None:
        if math.isnan(self.ratio) or self.ratio < 0.0:
            raise ValueError(f"odds must be nonnegative, got {self.ratio!r}")


def _xlogp(count: float, p: float) -> float:
    """count * ln(p) with the 0 * ln(0) = 0 convention."""
    if count == 0:
        return 0.0
    if p == 0.0:
        return -math.inf
    return count * math.log(p)


def binomial_log_likelihood(p: float, tally: TrialTally) -> float:
    """ln of the binomial probability of seeing the tally at per-trial p.

    The binomial coefficient goes through log-gamma, so counts up to millions
    are fine.  Certain events give exactly 0.0; a tally impossible under p
    (say p = 0 with m > 0) gives -inf.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be a probability in [0, 1], got {p!r}")
    n, m = tally.n, tally.m
    yes = _xlogp(m, p)
    no = _xlogp(n - m, 1.0 - p)
    if yes == -math.inf or no == -math.inf:
        return -math.inf
    log_binom = math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)
    return log_binom + yes + no


def _log_ratio_term(count: int, pq: float, pr: float) -> float:
    """count * ln(pq / pr) for one outcome type, honoring the conventions:
    zero count contributes nothing; a one-sided zero probability on an
    observed outcome yields the matching infinity."""
    if count == 0:
        return 0.0
    if pq == 0.0 and pr == 0.0:
        raise BothFalsifiedError("observed outcome is impossible under both hypotheses")
    if pq == 0.0:
        return -math.inf
    if pr == 0.0:
        return math.inf
    return count * (math.log(pq) - math.log(pr))


def log_bayes_factor(pair: HypothesisPair, tally: TrialTally) -> LogBayesFactor:
    """Log likelihood ratio (QM over LR) of an observed tally.

    The binomial coefficients cancel, leaving

        m * ln(q/r) + (n - m) * ln((1-q)/(1-r)).

    A single observed outcome that LR declares impossible pushes the value to
    +inf (LR falsified); the QM mirror image gives -inf.  A tally impossible
    under both raises BothFalsifiedError.
    """
    yes = _log_ratio_term(tally.m, pair.q, pair.r)
    no = _log_ratio_term(tally.n - tally.m, 1.0 - pair.q, 1.0 - pair.r)
    if math.isinf(yes) and math.isinf(no) and yes != no:
        raise BothFalsifiedError("tally is impossible under both hypotheses")
    return LogBayesFactor(yes + no)


def update_odds(prior: OddsRatio, evidence: LogBayesFactor) -> OddsRatio:
    """Posterior LR:QM odds: the prior divided by the likelihood ratio.

    Infinite evidence maps to 0 or +inf odds; an already-dead hypothesis
    (prior 0 or +inf) stays dead regardless of further evidence.
    """
    if prior.ratio == 0.0 or math.isinf(prior.ratio):
        return prior
    x = -evidence.log_value
    if x >= _EXP_MAX:
        return OddsRatio(math.inf)
    return OddsRatio(prior.ratio * math.exp(x))


def kl_per_trial(pair: HypothesisPair) -> float:
    """Expected log Bayes factor earned per trial when QM is true.

    This is the Kullback-Leibler divergence of Bernoulli(q) from
    Bernoulli(r), in nats; nonnegative, and zero exactly when q == r.
    """
    q, r = pair.q, pair.r
    if (r == 0.0 and q > 0.0) or (r == 1.0 and q < 1.0):
        raise InfiniteInformationError(
            "LR assigns probability 0 to an outcome QM can produce; "
            "per-trial information is unbounded"
        )
    yes = 0.0 if q == 0.0 else q * (math.log(q) - math.log(r))
    no = 0.0 if q == 1.0 else (1.0 - q) * (math.log1p(-q) - math.log1p(-r))
    return yes + no


def required_trials(pair: HypothesisPair, target_factor: float) -> float:
    """Trials needed for the expected log Bayes factor to reach ln(target).

    Returns the real-valued solution ln(target) / KL; use
    required_trials_ceil for a whole number of trials.
    """
    if not (math.isfinite(target_factor) and target_factor >= 1.0):
        raise ValueError(f"target factor must be finite and >= 1, got {target_factor!r}")
    kl = kl_per_trial(pair)
    if kl == 0.0:
        raise IndistinguishableError("q == r: no target factor is reachable")
    return math.log(target_factor) / kl


def required_trials_ceil(pair: HypothesisPair, target_factor: float) -> int:
    """Smallest whole number of trials reaching the target factor on average."""
    return math.ceil(required_trials(pair, target_factor))
