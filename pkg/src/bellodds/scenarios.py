"""The Bell-test scenarios, each reduced to a per-trial (q, r) hypothesis pair.

Every scenario pits an ideal quantum prediction against the local-realist
counter-theory that saturates the relevant locality inequality; saturation
minimizes the evidence the experimenter collects per trial, so these pairs
are the hardest case for ruling local realism out.  The adversary module
verifies the saturating strategies numerically.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .bayes import HypothesisPair, kl_per_trial, required_trials

__all__ = [
    "BisectionError",
    "ChainedGeometry",
    "GHZ",
    "CHAINED",
    "HARDY",
    "HARDY_NAIVE",
    "HARDY_MODE_LITERAL",
    "HARDY_MODE_PAPER",
    "HardySolution",
    "KINDS",
    "ScenarioResolution",
    "ScenarioSpec",
    "chained_pair",
    "find_optimal_k",
    "ghz_pair",
    "hardy_naive_trials",
    "hardy_optimize_r",
    "hardy_q",
    "scenario_pair",
]

GHZ = "ghz"
CHAINED = "chained"
HARDY = "hardy"
HARDY_NAIVE = "hardy-naive"
KINDS = (GHZ, CHAINED, HARDY, HARDY_NAIVE)

# Conventions for the evidence rate of Hardy's three zero-probability setups:
# "paper" charges the whole optimized r1 against them, rate -ln(1 - r1);
# "literal" charges each setup its own share r1/3, rate -ln(1 - r1/3).
HARDY_MODE_PAPER = "paper"
HARDY_MODE_LITERAL = "literal"
HARDY_MODES = (HARDY_MODE_PAPER, HARDY_MODE_LITERAL)


class BisectionError(RuntimeError):
    """Root bracketing or convergence failed."""


@dataclass(frozen=True)
class ScenarioSpec:
    """Which experiment family is analyzed.

    kind is one of "ghz", "chained", "hardy", "hardy-naive"; chained
    scenarios carry the number of measurement directions k, Hardy scenarios
    the zero-setup convention.
    """

    kind: str
    k: int | None = None
    hardy_mode: str = HARDY_MODE_PAPER

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == CHAINED:
            if self.k is None or self.k < 2:
                raise ValueError(f"chained scenarios need k >= 2, got {self.k!r}")
        elif self.k is not None:
            raise ValueError(f"k only applies to chained scenarios, got kind={self.kind!r}")
        if self.hardy_mode not in HARDY_MODES:
            raise ValueError(f"hardy_mode must be one of {HARDY_MODES}, got {self.hardy_mode!r}")

    def label(self) -> str:
        """Stable human/machine tag, e.g. "chained-k4" or "hardy-paper"."""
        if self.kind == CHAINED:
            return f"chained-k{self.k}"
        if self.kind == HARDY:
            return f"hardy-{self.hardy_mode}"
        return self.kind


@dataclass(frozen=True)
class ChainedGeometry:
    """k alternative measurement directions per observer, consecutive
    directions separated by theta = pi / 2k."""

    k: int
    theta: float

    @classmethod
    def for_k(cls, k: int) -> "ChainedGeometry":
        if k < 2:
            raise ValueError(f"k must be >= 2 (k = 2 is the CHSH configuration), got {k}")
        return cls(k=k, theta=math.pi / (2 * k))


@dataclass(frozen=True)
class HardySolution:
    """Optimized local-realist response to Hardy's four-setup experiment.

    The CH inequality r1 <= r2 + r3 + r4 is saturated by the symmetric split
    r2 = r3 = r4 = r1/3, and r1 is tuned so the experimenter gains evidence
    at the same per-trial rate whichever setup family they choose to test.
    setup_probs lists (q_j, r_j) for setups 1..4; only setup 1 has q > 0.
    """

    r_opt: float
    setup_probs: tuple[tuple[float, float], ...]
    n_real: float
    mode: str


@dataclass(frozen=True)
class ScenarioResolution:
    """A scenario's hypothesis pair plus whatever derivation metadata it has."""

    spec: ScenarioSpec
    pair: HypothesisPair
    geometry: ChainedGeometry | None = None
    hardy: HardySolution | None = None


def ghz_pair() -> HypothesisPair:
    """Three-particle GHZ test: QM predicts "yes" with certainty in each of
    the four setups.

    The best local-realist rule sets all four product averages to 0.5,
    saturating the Mermin bound of 2, so each setup answers "yes" with
    probability (1 + 0.5) / 2 = 0.75.
    """
    return HypothesisPair(q=1.0, r=0.75)


def chained_pair(k: int) -> HypothesisPair:
    """Two-particle singlet test with k directions per observer.

    QM gives each of the 2k - 1 equal-result probabilities
    q = (1 - cos(pi/2k)) / 2, while the saturating local-realist theory
    assigns the common value r = 1/2k to all of them.
    """
    geom = ChainedGeometry.for_k(k)
    q = (1.0 - math.cos(geom.theta)) / 2.0
    return HypothesisPair(q=q, r=1.0 / (2 * k))


def hardy_q() -> float:
    """Coincidence probability of Hardy's first setup: the golden-ratio
    conjugate (sqrt(5) - 1)/2 raised to the fifth power, about 0.09017."""
    return ((math.sqrt(5.0) - 1.0) / 2.0) ** 5


def _bisect_decreasing(g, lo: float, hi: float, xtol: float = 1e-12, max_iter: int = 200) -> float:
    """Root of a strictly decreasing scalar function by plain bisection."""
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0.0 > g_hi):
        raise BisectionError(f"no sign change on [{lo!r}, {hi!r}]: g={g_lo!r}..{g_hi!r}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= xtol:
            return 0.5 * (lo + hi)
    raise BisectionError(f"no convergence to xtol={xtol} within {max_iter} iterations")


def hardy_optimize_r(mode: str = HARDY_MODE_PAPER, target_d: float = 1e4) -> HardySolution:
    """Find the r1 in (0, q) equalizing the two setup families' evidence rates.

    Setup 1 yields KL(q, r1) per trial; the three setups where QM predicts no
    coincidences yield -ln(1 - r1) per trial in "paper" mode, or
    -ln(1 - r1/3) in "literal" mode.  Both sides are strictly monotone in r1,
    so bisection on (0, q) cannot miss: bracket (1e-12, q - 1e-12), absolute
    tolerance 1e-12, iteration cap 200.
    """
    if mode not in HARDY_MODES:
        raise ValueError(f"mode must be one of {HARDY_MODES}, got {mode!r}")
    if not (math.isfinite(target_d) and target_d > 1.0):
        raise ValueError(f"target_d must be finite and > 1, got {target_d!r}")
    q = hardy_q()
    share = 1.0 if mode == HARDY_MODE_PAPER else 1.0 / 3.0

    def gap(r: float) -> float:
        return kl_per_trial(HypothesisPair(q, r)) + math.log1p(-r * share)

    r1 = _bisect_decreasing(gap, 1e-12, q - 1e-12)
    r23 = r1 / 3.0
    r4 = r1 - 2.0 * r23  # summing r23 + r23 + r4 reproduces r1 exactly
    kl = kl_per_trial(HypothesisPair(q, r1))
    return HardySolution(
        r_opt=r1,
        setup_probs=((q, r1), (0.0, r23), (0.0, r23), (0.0, r4)),
        n_real=math.log(target_d) / kl,
        mode=mode,
    )


def hardy_naive_trials(survival_threshold: float) -> int:
    """Smallest n with (1 - q)^n below the threshold.

    This is the cost of the all-zero local-realist theory: it declares
    setup-1 coincidences impossible, so its survival only lasts while the
    experimenter keeps drawing "no" there.
    """
    if not 0.0 < survival_threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {survival_threshold!r}")
    q = hardy_q()
    n = max(1, math.floor(math.log(survival_threshold) / math.log1p(-q)))
    while (1.0 - q) ** n >= survival_threshold:
        n += 1
    while n > 1 and (1.0 - q) ** (n - 1) < survival_threshold:
        n -= 1
    return n


@functools.lru_cache(maxsize=128)
def scenario_pair(spec: ScenarioSpec, target_d: float = 1e4) -> ScenarioResolution:
    """Resolve a scenario to its hypothesis pair plus derivation metadata.

    target_d only matters for "hardy", whose optimized r1 depends on it
    through the trial count it reports.  Pure and cached.
    """
    if spec.kind == GHZ:
        return ScenarioResolution(spec, ghz_pair())
    if spec.kind == CHAINED:
        assert spec.k is not None
        return ScenarioResolution(spec, chained_pair(spec.k), geometry=ChainedGeometry.for_k(spec.k))
    if spec.kind == HARDY:
        sol = hardy_optimize_r(spec.hardy_mode, target_d)
        return ScenarioResolution(spec, HypothesisPair(hardy_q(), sol.r_opt), hardy=sol)
    return ScenarioResolution(spec, HypothesisPair(hardy_q(), 0.0))


def find_optimal_k(target_d: float, k_min: int, k_max: int) -> tuple[int, float]:
    """The k in [k_min, k_max] minimizing the chained trial count.

    Returns (k, trials); ties go to the smaller k.
    """
    if not 2 <= k_min <= k_max:
        raise ValueError(f"need 2 <= k_min <= k_max, got [{k_min}, {k_max}]")
    best_k, best_n = k_min, math.inf
    for k in range(k_min, k_max + 1):
        n = required_trials(chained_pair(k), target_d)
        if n < best_n:
            best_k, best_n = k, n
    return best_k, best_n
