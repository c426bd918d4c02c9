"""
The observation operator O_n on Boolean functions.

O_n sends f to the XOR of its n single-coordinate flips,

    O_n(f)(x) = f(x + e_1) + ... + f(x + e_n)   over GF(2),

i.e. the neighbour sum of the hypercube graph. Flipping coordinate i of
every point is a block swap of stride 2^i in the packed table: inside a
word for i < 6 (masked shift), across words for i >= 6 (reshape and
reverse). One application is therefore n vectorized passes.

Example:
    >>> from obsaudit.boolfun import atom
    >>> from obsaudit.observer import Observer
    >>> o3 = Observer(3)
    >>> o3.apply(atom(3, 0b111)).support()
    [3, 5, 6]
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np

from .boolfun import TruthTable, atom, check_arity
from .exceptions import ValidationError
from .gf2linalg import Gf2Matrix, check_dense_cap

logger = logging.getLogger(__name__)

_SWAP_MASKS = (
    0x5555555555555555,
    0x3333333333333333,
    0x0F0F0F0F0F0F0F0F,
    0x00FF00FF00FF00FF,
    0x0000FFFF0000FFFF,
    0x00000000FFFFFFFF,
)


def flip_coordinate(words: np.ndarray, i: int) -> np.ndarray:
    """Packed table of x -> f(x + e_{i+1}) (0-based coordinate i)."""
    if i < 6:
        shift = np.uint64(1 << i)
        mask = np.uint64(_SWAP_MASKS[i])
        return ((words & mask) << shift) | ((words >> shift) & mask)
    stride = 1 << (i - 6)
    return words.reshape(-1, 2, stride)[:, ::-1, :].reshape(-1)


def translate(f: TruthTable, v: int) -> TruthTable:
    """
    Group translation x -> f(x + v).

    Raises:
        ValidationError: If v is not an n-bit mask
    """
    if not 0 <= v < f.size:
        raise ValidationError(f"Translation {v} outside the {f.n}-cube")
    words = f.words
    for i in range(f.n):
        if v >> i & 1:
            words = flip_coordinate(words, i)
    return TruthTable(f.n, words)


class AtomOrder(str, Enum):
    """Basis order for materialized matrices."""

    ASCENDING = "ascending"
    PRINTED = "printed"


def reverse_bits(value: int, n: int) -> int:
    """The n-bit mask read in the opposite coordinate order."""
    return int(format(value, f"0{n}b")[::-1], 2)


def printed_point(n: int, index: int) -> int:
    """
    The point of atom p_index.

    Atoms are listed with x_1 as the leading coordinate, descending:
    p_1 = (1,...,1), p_2 = (1,...,1,0), ..., p_{2^n} = (0,...,0). Points
    store x_1 in the least significant bit, hence the reversal.

    Example:
        >>> printed_point(3, 2)
        3
    """
    size = 1 << n
    if not 1 <= index <= size:
        raise ValidationError(f"Atom index {index} outside 1..{size}")
    return reverse_bits(size - index, n)


def order_points(n: int, order: AtomOrder) -> List[int]:
    """Points in basis order; the printed order is p_1, p_2, ..., p_{2^n}."""
    if AtomOrder(order) is AtomOrder.PRINTED:
        return [printed_point(n, i) for i in range(1, (1 << n) + 1)]
    return list(range(1 << n))


def atom_label(n: int, point: int) -> str:
    """Printed-style atom name of a point, inverse of :func:`printed_point`."""
    return f"p{(1 << n) - reverse_bits(point, n)}"


@dataclass(frozen=True)
class OrbitReport:
    """
    Cycle structure of the sequence f, O f, O^2 f, ...

    ``period`` is None when no repetition was found within the step
    budget; then ``orbit_size`` counts the distinct iterates visited.
    """

    seed: TruthTable
    period: Optional[int]
    preperiod: int
    orbit_size: int


@dataclass(frozen=True)
class BenchmarkResult:
    """Timings of one word-level application against the per-point loop."""

    n: int
    repeats: int
    word_seconds: float
    naive_seconds: float

    @property
    def speedup(self) -> float:
        if not self.word_seconds:
            return float("inf")
        return self.naive_seconds / self.word_seconds


@dataclass(frozen=True)
class Observer:
    """
    The operator O_n as an implicit GF(2)-linear map on truth tables.

    Attributes:
        n: arity of the tables the operator acts on
    """

    n: int

    def __post_init__(self) -> None:
        check_arity(self.n)

    def _check(self, f: TruthTable) -> None:
        if not isinstance(f, TruthTable) or f.n != self.n:
            got = getattr(f, "n", type(f).__name__)
            raise ValidationError(f"Observer of arity {self.n} applied to arity {got}")

    def apply(self, f: TruthTable) -> TruthTable:
        """
        O_n(f) by n word-level flip passes.

        Raises:
            ValidationError: If f has a different arity
        """
        self._check(f)
        acc = np.zeros_like(f.words)
        for i in range(self.n):
            acc ^= flip_coordinate(f.words, i)
        return TruthTable(self.n, acc)

    def apply_power(self, f: TruthTable, k: int) -> TruthTable:
        """O_n^k(f) for k >= 0."""
        if k < 0:
            raise ValidationError(f"Power must be non-negative, got {k}")
        for _ in range(k):
            f = self.apply(f)
        return f

    def naive_apply(self, f: TruthTable) -> TruthTable:
        """Reference per-point loop; only used as a benchmark and test oracle."""
        self._check(f)
        values = f.bits().tolist()
        out = [0] * f.size
        for x in range(f.size):
            acc = 0
            for i in range(self.n):
                acc ^= values[x ^ (1 << i)]
            out[x] = acc
        return TruthTable.from_bits(self.n, out)

    def is_invariant(self, f: TruthTable) -> bool:
        """Decide O_n(f) = f by one application and a word comparison."""
        return self.apply(f) == f

    def matrix(self, order: AtomOrder = AtomOrder.PRINTED) -> Gf2Matrix:
        """
        Dense GF(2) matrix of O_n over the atom basis.

        Entry (g, f) is 1 iff atom g occurs in O_n(atom f). The default
        printed order lists p_1 (the all-ones point) first.

        Raises:
            CapExceededError: If n exceeds the dense cap
        """
        check_dense_cap(1 << self.n)
        points = np.asarray(order_points(self.n, order), dtype=np.int64)
        position = np.empty_like(points)
        position[points] = np.arange(points.size)
        rows = []
        cols = []
        for i in range(self.n):
            rows.append(np.arange(points.size))
            cols.append(position[points ^ (1 << i)])
        size = 1 << self.n
        logger.debug("materializing %dx%d matrix of O_%d", size, size, self.n)
        return Gf2Matrix.from_positions(
            size, size, np.concatenate(rows), np.concatenate(cols)
        )

    def orbit(self, f: TruthTable, max_steps: int = 1024) -> OrbitReport:
        """
        Brent cycle detection on O^k(f).

        Args:
            f: the seed
            max_steps: budget of operator applications for finding the period

        Returns:
            OrbitReport with period None when the budget ran out
        """
        self._check(f)
        if max_steps < 1:
            raise ValidationError("max_steps must be at least 1")
        power = period = 1
        tortoise = f
        hare = self.apply(f)
        steps = 1
        while tortoise != hare:
            if steps >= max_steps:
                return OrbitReport(seed=f, period=None, preperiod=0, orbit_size=steps)
            if power == period:
                tortoise = hare
                power *= 2
                period = 0
            hare = self.apply(hare)
            period += 1
            steps += 1

        tortoise = hare = f
        for _ in range(period):
            hare = self.apply(hare)
        preperiod = 0
        while tortoise != hare:
            tortoise = self.apply(tortoise)
            hare = self.apply(hare)
            preperiod += 1
        return OrbitReport(
            seed=f, period=period, preperiod=preperiod, orbit_size=preperiod + period
        )

    def atom_image(self, point: int) -> TruthTable:
        """O_n applied to the atom at ``point``."""
        return self.apply(atom(self.n, point))


def benchmark_apply(
    n: int, repeats: int = 5, naive: bool = True, seed: int = 0
) -> BenchmarkResult:
    """
    Time the word-level application against the per-point loop.

    Both paths run on the same random table and their results are checked
    for equality. The best of ``repeats`` runs is reported for the
    word-level path; the naive loop runs once.
    """
    rng = np.random.default_rng(seed)
    observer = Observer(n)
    f = TruthTable.random(n, rng)

    best = float("inf")
    result = f
    for _ in range(max(1, repeats)):
        start = time.perf_counter()
        result = observer.apply(f)
        best = min(best, time.perf_counter() - start)

    naive_seconds = float("nan")
    if naive:
        start = time.perf_counter()
        reference = observer.naive_apply(f)
        naive_seconds = time.perf_counter() - start
        if reference != result:
            raise ValidationError("Word-level and naive applications disagree")
    logger.debug("bench n=%d word=%.6fs naive=%.6fs", n, best, naive_seconds)
    return BenchmarkResult(
        n=n, repeats=repeats, word_seconds=best, naive_seconds=naive_seconds
    )
