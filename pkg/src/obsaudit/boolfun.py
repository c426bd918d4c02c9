"""
Boolean functions on the n-cube.

This module holds the representations every other module consumes:

- TruthTable: the 2^n values of f packed little-endian into uint64 words
  (point x has coordinates x_1..x_n with x_1 the least significant bit)
- AnfPoly: the algebraic normal form, a sorted tuple of monomial masks
- WalshSpectrum: exact integer Walsh coefficients

Transforms between them are numpy butterflies: the Moebius transform
(table <-> ANF) and the Walsh-Hadamard transform.

Example:
    >>> from obsaudit.boolfun import atom, anf_of, predicate_family
    >>> p1 = atom(3, 0b111)
    >>> anf_of(p1).monomials
    (7,)
    >>> predicate_family("delta", 9).monomials
    (1, 256)
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .config import LIMITS
from .exceptions import CapExceededError, ValidationError

WORD_BITS = 64
_LE_WORD = np.dtype("<u8")


def check_arity(n: int) -> None:
    """
    Validate an arity against the configured cap.

    Raises:
        ValidationError: If n < 1
        CapExceededError: If n exceeds ``LIMITS.arity_cap``
    """
    if n < 1:
        raise ValidationError(f"Arity must be at least 1, got {n}")
    if n > LIMITS.arity_cap:
        raise CapExceededError(
            f"Arity {n} exceeds the configured cap {LIMITS.arity_cap}"
        )


def word_count(n: int) -> int:
    """Number of uint64 words holding 2^n bits."""
    return max(1, (1 << n) // WORD_BITS)


def tail_mask(n: int) -> np.uint64:
    """Mask of the valid bits in each word (all bits once 2^n >= 64)."""
    if n >= 6:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << (1 << n)) - 1)


def parity_words(words: np.ndarray) -> int:
    """Parity of the total popcount of a word array."""
    x = np.bitwise_xor.reduce(words, dtype=np.uint64) if words.size else np.uint64(0)
    x = int(x)
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> shift
    return x & 1


def popcount_words(words: np.ndarray) -> int:
    """Total number of set bits in a word array."""
    return int(np.unpackbits(words.astype(_LE_WORD).view(np.uint8)).sum())


class TruthTable:
    """
    Immutable bit-packed truth table of a Boolean function on {0,1}^n.

    Bit x of the packed words is f(x). XOR of two tables is addition in
    the GF(2) algebra of functions; AND and OR are the lattice operations.
    Tables are hashable and compare by value.

    Attributes:
        n: arity
        words: read-only uint64 array of length max(1, 2^n / 64)

    Example:
        >>> t = TruthTable.from_bits(2, [0, 1, 1, 1])
        >>> t.to_hex()
        'e'
    """

    __slots__ = ("n", "words")

    def __init__(self, n: int, words: np.ndarray):
        check_arity(n)
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.shape != (word_count(n),):
            raise ValidationError(
                f"Expected {word_count(n)} words for arity {n}, got shape {words.shape}"
            )
        if n < 6 and int(words[0] & ~tail_mask(n)):
            raise ValidationError("Bits beyond 2^n are set")
        words = words.copy()
        words.setflags(write=False)
        self.n = n
        self.words = words

    @classmethod
    def zeros(cls, n: int) -> "TruthTable":
        """The zero function."""
        check_arity(n)
        return cls(n, np.zeros(word_count(n), dtype=np.uint64))

    @classmethod
    def ones(cls, n: int) -> "TruthTable":
        """The constant-1 function."""
        check_arity(n)
        return cls(n, np.full(word_count(n), tail_mask(n), dtype=np.uint64))

    @classmethod
    def from_bits(cls, n: int, bits: Sequence[int]) -> "TruthTable":
        """Pack a length-2^n 0/1 sequence (index = point)."""
        check_arity(n)
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.shape != (1 << n,):
            raise ValidationError(f"Expected {1 << n} bits, got {arr.size}")
        packed = np.packbits(arr & 1, bitorder="little")
        padded = np.zeros(word_count(n) * 8, dtype=np.uint8)
        padded[: packed.size] = packed
        return cls(n, padded.view(_LE_WORD).astype(np.uint64))

    @classmethod
    def from_int(cls, n: int, value: int) -> "TruthTable":
        """Table whose bit x is bit x of ``value``."""
        check_arity(n)
        if value < 0 or value.bit_length() > (1 << n):
            raise ValidationError(f"Value does not fit in 2^{n} bits")
        raw = value.to_bytes(word_count(n) * 8, "little")
        return cls(n, np.frombuffer(raw, dtype=_LE_WORD).astype(np.uint64))

    @classmethod
    def from_hex(cls, n: int, text: str) -> "TruthTable":
        """Parse the hexadecimal form produced by :meth:`to_hex`."""
        try:
            value = int(text, 16)
        except ValueError:
            raise ValidationError(f"Invalid hexadecimal truth table: {text!r}")
        return cls.from_int(n, value)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "TruthTable":
        """Tabulate ``fn`` at every point (per-point; meant for small n)."""
        check_arity(n)
        return cls.from_bits(n, [fn(x) & 1 for x in range(1 << n)])

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "TruthTable":
        """Uniformly random table drawn from ``rng``."""
        check_arity(n)
        words = rng.integers(
            0,
            np.iinfo(np.uint64).max,
            size=word_count(n),
            dtype=np.uint64,
            endpoint=True,
        )
        return cls(n, words & tail_mask(n))

    @property
    def size(self) -> int:
        """Number of points, 2^n."""
        return 1 << self.n

    def bits(self) -> np.ndarray:
        """Unpacked uint8 values indexed by point."""
        raw = self.words.astype(_LE_WORD).view(np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.size]

    def to_int(self) -> int:
        return int.from_bytes(self.words.astype(_LE_WORD).tobytes(), "little")

    def to_hex(self) -> str:
        """Hexadecimal string; the least significant bit is point 0."""
        width = max(1, self.size // 4)
        return format(self.to_int(), f"0{width}x")

    def weight(self) -> int:
        """Number of points where f = 1."""
        return popcount_words(self.words)

    def support(self) -> List[int]:
        """Ascending list of points where f = 1."""
        return np.flatnonzero(self.bits()).tolist()

    def is_zero(self) -> bool:
        return not self.words.any()

    def is_constant(self) -> bool:
        return self.is_zero() or self == TruthTable.ones(self.n)

    def _check_same(self, other: "TruthTable") -> None:
        if not isinstance(other, TruthTable):
            raise ValidationError(f"Expected a TruthTable, got {type(other).__name__}")
        if other.n != self.n:
            raise ValidationError(f"Arity mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "TruthTable") -> "TruthTable":
        self._check_same(other)
        return TruthTable(self.n, self.words ^ other.words)

    def __and__(self, other: "TruthTable") -> "TruthTable":
        self._check_same(other)
        return TruthTable(self.n, self.words & other.words)

    def __or__(self, other: "TruthTable") -> "TruthTable":
        self._check_same(other)
        return TruthTable(self.n, self.words | other.words)

    def __invert__(self) -> "TruthTable":
        return TruthTable(self.n, ~self.words & tail_mask(self.n))

    def __getitem__(self, point: int) -> int:
        if not 0 <= point < self.size:
            raise ValidationError(f"Point {point} outside the {self.n}-cube")
        return int(self.words[point >> 6] >> np.uint64(point & 63)) & 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.n, self.words.tobytes()))

    def __repr__(self) -> str:
        text = self.to_hex()
        if len(text) > 32:
            text = text[:29] + "..."
        return f"TruthTable(n={self.n}, hex={text})"


def atom(n: int, point: int) -> TruthTable:
    """
    Indicator of a single point of {0,1}^n.

    Args:
        n: arity
        point: n-bit mask of the point (x_1 is bit 0)

    Raises:
        ValidationError: If point is not below 2^n
        CapExceededError: If n exceeds the arity cap

    Example:
        >>> atom(1, 0).support()
        [0]
    """
    check_arity(n)
    if not 0 <= point < (1 << n):
        raise ValidationError(f"Point {point} outside the {n}-cube")
    words = np.zeros(word_count(n), dtype=np.uint64)
    words[point >> 6] = np.uint64(1 << (point & 63))
    return TruthTable(n, words)


@dataclass(frozen=True)
class AnfPoly:
    """
    Algebraic normal form: XOR over monomials of products of variables.

    Each monomial is a subset mask S (bit i-1 set means x_i occurs).
    The monomials are kept sorted and unique so equality is canonical;
    the empty tuple is the zero function.
    """

    n: int
    monomials: Tuple[int, ...]

    def __post_init__(self) -> None:
        check_arity(self.n)
        if list(self.monomials) != sorted(set(self.monomials)):
            raise ValidationError("Monomials must be sorted and unique; use AnfPoly.of")
        top = 1 << self.n
        if self.monomials and (self.monomials[0] < 0 or self.monomials[-1] >= top):
            raise ValidationError("Monomial mask outside the variable range")

    @classmethod
    def of(cls, n: int, monomials: Iterable[int]) -> "AnfPoly":
        """Build from any iterable; repeated monomials cancel in pairs."""
        odd = set()
        for mask in monomials:
            odd ^= {mask}
        return cls(n, tuple(sorted(odd)))

    @property
    def degree(self) -> int:
        """Largest monomial size, -1 for the zero polynomial."""
        return max((bin(m).count("1") for m in self.monomials), default=-1)

    def __xor__(self, other: "AnfPoly") -> "AnfPoly":
        if other.n != self.n:
            raise ValidationError(f"Arity mismatch: {self.n} vs {other.n}")
        return AnfPoly.of(self.n, self.monomials + other.monomials)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        terms = []
        for mask in self.monomials:
            if mask == 0:
                terms.append("1")
                continue
            names = [f"x{i + 1}" for i in range(self.n) if mask >> i & 1]
            terms.append("*".join(names))
        return " + ".join(terms)


def _moebius(bits: np.ndarray, n: int) -> np.ndarray:
    out = np.array(bits, dtype=np.uint8, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] ^= view[:, 0, :]
    return out


def anf_of(t: TruthTable) -> AnfPoly:
    """
    Algebraic normal form of a truth table (Moebius transform).

    Example:
        >>> anf_of(atom(1, 1)).monomials
        (1,)
    """
    coeffs = _moebius(t.bits(), t.n)
    return AnfPoly(t.n, tuple(np.flatnonzero(coeffs).tolist()))


def table_of(a: AnfPoly) -> TruthTable:
    """
    Evaluate an ANF at every point.

    Example:
        >>> table_of(AnfPoly.of(2, [1, 2, 3])).bits().tolist()
        [0, 1, 1, 1]
    """
    coeffs = np.zeros(1 << a.n, dtype=np.uint8)
    coeffs[list(a.monomials)] = 1
    return TruthTable.from_bits(a.n, _moebius(coeffs, a.n))


PREDICATE_FAMILIES = ("pi1", "pi2", "delta")


def odd_squares(limit: int) -> List[int]:
    return [s * s for s in range(1, math.isqrt(limit) + 1, 2)]


def predicate_family(name: str, n: int) -> AnfPoly:
    """
    The explicit predicate formulas of the cuspidal examples.

    - ``pi1``: XOR over subsets I with |I| = 1, 2 (mod 4) of prod x_i
    - ``pi2``: sum over k of the sum over |I| = 2k of
      prod_{i in I} x_i prod_{j not in I} (1 - x_j), reduced mod 2
    - ``delta``: XOR of x_s over odd squares s <= n

    Each inner pi2 term is the indicator of the point with support I, so
    the double sum and the joint sum over all even-size subsets give the
    same function; it is evaluated as written and converted to ANF.

    Raises:
        ValidationError: If the family name is unknown

    Example:
        >>> predicate_family("pi1", 2).monomials
        (1, 2, 3)
    """
    check_arity(n)
    if name == "pi1":
        return AnfPoly.of(
            n, [m for m in range(1, 1 << n) if bin(m).count("1") % 4 in (1, 2)]
        )
    if name == "delta":
        return AnfPoly.of(n, [1 << (s - 1) for s in odd_squares(n)])
    if name == "pi2":
        total = TruthTable.zeros(n)
        for k in range(n // 2 + 1):
            inner = TruthTable.zeros(n)
            for point in range(1 << n):
                if bin(point).count("1") == 2 * k:
                    inner ^= atom(n, point)
            total ^= inner
        return anf_of(total)
    raise ValidationError(
        f"Unknown predicate family {name!r}; expected one of {', '.join(PREDICATE_FAMILIES)}"
    )


class WalshLift(str, Enum):
    """How a 0/1 table is lifted to integers before the Walsh transform."""

    ZERO_ONE = "zero_one"
    PLUS_MINUS = "plus_minus"


@dataclass(frozen=True)
class WalshSpectrum:
    """Walsh coefficients w(S) = sum_x (-1)^<S,x> g(x), indexed by mask S."""

    n: int
    coefficients: np.ndarray

    def __getitem__(self, mask: int) -> int:
        return int(self.coefficients[mask])


def _butterfly(values: np.ndarray, n: int) -> np.ndarray:
    out = np.array(values, dtype=np.int64, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        low = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = low - view[:, 1, :]
    return out


def walsh(t: TruthTable, lift: WalshLift = WalshLift.ZERO_ONE) -> WalshSpectrum:
    """
    Fast Walsh-Hadamard transform, n passes of 2^n integer operations.

    Args:
        t: the table to transform
        lift: ``zero_one`` uses g = f, ``plus_minus`` uses g = 1 - 2f

    Example:
        >>> walsh(TruthTable.ones(2)).coefficients.tolist()
        [4, 0, 0, 0]
    """
    bits = t.bits().astype(np.int64)
    if WalshLift(lift) is WalshLift.PLUS_MINUS:
        bits = 1 - 2 * bits
    coeffs = _butterfly(bits, t.n)
    coeffs.setflags(write=False)
    return WalshSpectrum(t.n, coeffs)


def inverse_walsh(spectrum: WalshSpectrum) -> np.ndarray:
    """Apply the transform again; the result is 2^n times the lifted table."""
    return _butterfly(spectrum.coefficients, spectrum.n)
