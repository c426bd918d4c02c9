"""
Metropolis sampling of the discrete action at a finite level.

For a configuration phi: {0,1}^n -> {0,1} and a reference predicate A,

    S[phi] = sum_x sum_{y ~ x} J(x, y) phi(x) phi(y) + sum_x lambda (phi(x) - A(x))^2

with J(x, y) = 2^{-d(x, y)} and y ~ x meaning d(x, y) = 1. Under the
default ultrametric d(x, y) is n minus the length of the longest common
suffix of the coordinate strings; with x_1 the least significant bit that
is the bit length of x ^ y, so the only neighbour of x is x ^ 1. The
Hamming metric (n neighbours x ^ e_i) is available for comparison.

Both terms are tracked as integers (ordered neighbour pairs with
phi = 1 on both ends, and mismatches with A), so energies are exact
Fractions and a single flip updates them in O(neighbours).
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .boolfun import TruthTable
from .exceptions import CapExceededError, ValidationError

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_ARITY = 3
MAX_HISTOGRAM_ARITY = 4
BATCH = 1 << 16
COUPLING = Fraction(1, 2)

Number = Union[Fraction, float]


class Metric(str, Enum):
    """Distance on {0,1}^n defining the neighbour relation."""

    ULTRAMETRIC = "ultrametric"
    HAMMING = "hamming"


def distance(x: int, y: int, metric: Metric = Metric.ULTRAMETRIC) -> int:
    """d(x, y) under the chosen metric."""
    if Metric(metric) is Metric.HAMMING:
        return bin(x ^ y).count("1")
    return (x ^ y).bit_length()


def neighbour_masks(n: int, metric: Metric = Metric.ULTRAMETRIC) -> Tuple[int, ...]:
    """Masks m with y = x ^ m at distance 1."""
    if Metric(metric) is Metric.HAMMING:
        return tuple(1 << i for i in range(n))
    return (1,)


def _fraction(value: object, name: str) -> Fraction:
    try:
        frac = Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{name} must be a finite number, got {value!r}")
    if frac < 0:
        raise ValidationError(f"{name} must be non-negative, got {value!r}")
    return frac


@dataclass(frozen=True)
class CftParams:
    """
    Parameters of one chain.

    Attributes:
        n: arity of the configurations
        lam: potential coupling lambda >= 0
        beta: inverse temperature >= 0
        reference: the predicate A the potential pulls towards
        seed: PRNG seed of the chain
        metric: neighbour relation
    """

    n: int
    lam: Fraction
    beta: Fraction
    reference: TruthTable
    seed: int = 0
    metric: Metric = Metric.ULTRAMETRIC

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", _fraction(self.lam, "lambda"))
        object.__setattr__(self, "beta", _fraction(self.beta, "beta"))
        object.__setattr__(self, "metric", Metric(self.metric))
        if self.reference.n != self.n:
            raise ValidationError(
                f"Reference of arity {self.reference.n} does not match n={self.n}"
            )


@dataclass(frozen=True)
class SpinConfig:
    """A 0/1 assignment on {0,1}^n."""

    phi: TruthTable

    @property
    def n(self) -> int:
        return self.phi.n

    def flipped(self, site: int) -> "SpinConfig":
        bits = self.phi.bits().copy()
        bits[site] ^= 1
        return SpinConfig(TruthTable.from_bits(self.n, bits))


def _terms(
    bits: np.ndarray, reference: np.ndarray, masks: Sequence[int]
) -> Tuple[int, int]:
    points = np.arange(bits.size)
    pairs = sum(int(np.sum(bits & bits[points ^ m])) for m in masks)
    mismatches = int(np.sum(bits ^ reference))
    return pairs, mismatches


def energy(cfg: SpinConfig, p: CftParams) -> Fraction:
    """
    Exact S[phi].

    Raises:
        ValidationError: If the configuration arity differs from p.n

    Example:
        >>> from obsaudit.boolfun import TruthTable
        >>> ones = TruthTable.ones(2)
        >>> energy(SpinConfig(ones), CftParams(2, 5, 1, ones))
        Fraction(2, 1)
    """
    if cfg.n != p.n:
        raise ValidationError(
            f"Configuration of arity {cfg.n} for parameters with n={p.n}"
        )
    masks = neighbour_masks(p.n, p.metric)
    pairs, mismatches = _terms(cfg.phi.bits(), p.reference.bits(), masks)
    return COUPLING * pairs + p.lam * mismatches


def flip_delta(cfg: SpinConfig, p: CftParams, site: int) -> Fraction:
    """S[phi with site flipped] - S[phi], from the neighbours of the site only."""
    if not 0 <= site < cfg.phi.size:
        raise ValidationError(f"Site {site} outside the {p.n}-cube")
    v = cfg.phi[site]
    up = 1 - 2 * v
    nb = sum(cfg.phi[site ^ m] for m in neighbour_masks(p.n, p.metric))
    mismatch = v ^ p.reference[site]
    # each neighbour pair is counted in both orders, weight 1/2 each
    return up * nb + p.lam * (1 - 2 * mismatch)


AcceptanceRule = Callable[[Fraction, Fraction], Fraction]


def log_acceptance(delta: Number, beta: Number) -> Number:
    """
    Log of the Metropolis acceptance min(1, exp(-beta delta)).

    Exact on Fractions; the chain calls it with floats.

    Example:
        >>> log_acceptance(Fraction(3), Fraction(1, 2))
        Fraction(-3, 2)
    """
    if delta <= 0:
        return 0 * delta
    return -beta * delta


@dataclass(frozen=True)
class TraceRow:
    """One recorded step (CSV columns in order)."""

    step: int
    energy: Fraction
    overlap: Fraction

    def as_row(self) -> List[str]:
        return [str(self.step), str(self.energy), str(self.overlap)]


TRACE_HEADER = ["step", "energy", "overlap"]


@dataclass(frozen=True)
class MetropolisResult:
    """
    Outcome of one chain.

    Attributes:
        trace: recorded (step, energy, overlap) rows
        final: configuration after the last step
        accepted: number of accepted flips
        histogram: visits per state (state = table as an integer), only
            for n <= 4 when requested
    """

    params: CftParams
    steps: int
    trace: Tuple[TraceRow, ...]
    final: SpinConfig
    accepted: int
    histogram: Optional[Dict[int, int]] = field(default=None)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.steps


def metropolis(
    p: CftParams,
    steps: int,
    initial: Optional[SpinConfig] = None,
    record_every: Optional[int] = None,
    track_states: bool = False,
) -> MetropolisResult:
    """
    Single-site-flip Metropolis with acceptance min(1, exp(-beta dS)).

    Sites and uniforms are drawn in batches from ``default_rng(p.seed)``,
    so a chain is fully determined by its parameters. The initial
    configuration is random unless given. By default about a thousand
    trace rows are recorded.

    Raises:
        ValidationError: If steps < 1 or record_every < 1
        CapExceededError: If states are tracked for n > 4
    """
    if record_every is None:
        record_every = max(1, steps // 1000)
    if steps < 1 or record_every < 1:
        raise ValidationError("steps and record_every must be at least 1")
    if track_states and p.n > MAX_HISTOGRAM_ARITY:
        raise CapExceededError(
            f"State histograms limited to n <= {MAX_HISTOGRAM_ARITY}"
        )
    rng = np.random.default_rng(p.seed)
    size = 1 << p.n
    if initial is None:
        initial = SpinConfig(TruthTable.random(p.n, rng))
    masks = neighbour_masks(p.n, p.metric)
    phi = bytearray(initial.phi.bits().tobytes())
    ref = p.reference.bits().tolist()
    pairs, mismatches = _terms(initial.phi.bits(), p.reference.bits(), masks)
    state = initial.phi.to_int()
    beta = float(p.beta)
    lam = float(p.lam)

    def row(step: int) -> TraceRow:
        return TraceRow(
            step,
            COUPLING * pairs + p.lam * mismatches,
            Fraction(size - mismatches, size),
        )

    trace = [row(0)]
    histogram: Optional[Dict[int, int]] = {} if track_states else None
    accepted = 0
    done = 0
    while done < steps:
        count = min(BATCH, steps - done)
        sites = rng.integers(0, size, size=count).tolist()
        uniforms = rng.random(count).tolist()
        for site, u in zip(sites, uniforms):
            v = phi[site]
            up = 1 - 2 * v
            nb = 0
            for m in masks:
                nb += phi[site ^ m]
            miss = v ^ ref[site]
            d_mismatch = 1 - 2 * miss
            delta = up * nb + lam * d_mismatch
            if u < math.exp(log_acceptance(delta, beta)):
                phi[site] = 1 - v
                pairs += 2 * up * nb
                mismatches += d_mismatch
                state ^= 1 << site
                accepted += 1
            done += 1
            if histogram is not None:
                histogram[state] = histogram.get(state, 0) + 1
            if done % record_every == 0:
                trace.append(row(done))
    final = SpinConfig(TruthTable.from_bits(p.n, list(phi)))
    logger.debug("metropolis n=%d steps=%d accepted=%d", p.n, steps, accepted)
    return MetropolisResult(p, steps, tuple(trace), final, accepted, histogram)


def _all_configs(n: int) -> List[SpinConfig]:
    if n > MAX_EXHAUSTIVE_ARITY:
        raise CapExceededError(
            f"Exhaustive enumeration limited to n <= {MAX_EXHAUSTIVE_ARITY}"
        )
    return [SpinConfig(TruthTable.from_int(n, s)) for s in range(1 << (1 << n))]


def ground_states(p: CftParams) -> Tuple[Fraction, List[SpinConfig]]:
    """Minimum energy and all minimizing configurations, by enumeration (n <= 3)."""
    configs = _all_configs(p.n)
    energies = [energy(c, p) for c in configs]
    low = min(energies)
    return low, [c for c, e in zip(configs, energies) if e == low]


def exact_distribution(p: CftParams) -> Dict[int, float]:
    """Boltzmann weights exp(-beta S) / Z per state, by enumeration (n <= 3)."""
    configs = _all_configs(p.n)
    energies = [energy(c, p) for c in configs]
    low = min(energies)
    weights = [math.exp(-float(p.beta * (e - low))) for e in energies]
    z = sum(weights)
    return {c.phi.to_int(): w / z for c, w in zip(configs, weights)}


def total_variation(histogram: Dict[int, int], distribution: Dict[int, float]) -> float:
    """Total-variation distance between visit frequencies and a distribution."""
    total = sum(histogram.values())
    states = set(histogram) | set(distribution)
    return 0.5 * sum(
        abs(histogram.get(s, 0) / total - distribution.get(s, 0.0)) for s in states
    )


def detailed_balance_holds(
    p: CftParams, rule: AcceptanceRule = log_acceptance
) -> bool:
    """
    Check pi(a) P(a -> b) = pi(b) P(b -> a) for every single-flip pair (n <= 3).

    pi(a) ~ exp(-beta S_a) uses the full energy. P(a -> b) is the uniform
    site proposal 2^-n times the acceptance ``rule`` applies to
    ``flip_delta``, the same update the chain performs. The proposal
    cancels, so the log-weights -beta S_a + rule(dS_ab, beta) and
    -beta S_b + rule(dS_ba, beta) are compared as Fractions.
    """
    configs = _all_configs(p.n)
    energies = [energy(c, p) for c in configs]
    for state, site in product(range(len(configs)), range(1 << p.n)):
        other = state ^ (1 << site)
        if other < state:
            continue
        forward = rule(flip_delta(configs[state], p, site), p.beta)
        backward = rule(flip_delta(configs[other], p, site), p.beta)
        left = -p.beta * energies[state] + forward
        right = -p.beta * energies[other] + backward
        if left != right:
            logger.debug(
                "detailed balance fails between %d and %d: %s != %s",
                state,
                other,
                left,
                right,
            )
            return False
    return True
