"""
Arithmetic in F_2[t] and predicate L-functions.

Polynomials over F_2 are integers (bit j = coefficient of t^j); every
nonzero one is monic. Series are kept in the variable u = 2^{-s}, so a
place of degree e contributes q_v^{-s} = u^e, and all coefficients are
exact Fractions; complex evaluation is a thin layer on top.

Example:
    >>> [str(p) for p in irreducibles(2)]
    ['t^2 + t + 1']
    >>> euler_product(character("delta"), 1).coefficients_as_strings()
    ['1', '2']
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .boolfun import TruthTable, odd_squares
from .exceptions import ValidationError
from .gf2linalg import (
    Gf2Poly,
    IntPoly,
    char_poly_lift,
    krylov_space,
    restriction_charpoly_consistent,
)
from .observer import Observer

logger = logging.getLogger(__name__)

MAX_IRREDUCIBLE_DEGREE = 20
MAX_SERIES_DEGREE = 16

LOCAL_FACTOR_CAVEAT = (
    "global Krylov space of P under O_n used in place of the place-indexed V_P; "
    "GF(2) entries lifted to integers 0/1"
)


@dataclass(frozen=True, order=True)
class MonicPoly2:
    """
    A monic polynomial in F_2[t], stored as its coefficient bitmask.

    Raises:
        ValidationError: If the mask is not positive
    """

    mask: int

    def __post_init__(self) -> None:
        if self.mask < 1:
            raise ValidationError(f"Not a monic polynomial mask: {self.mask}")

    @property
    def degree(self) -> int:
        return self.mask.bit_length() - 1

    @property
    def norm(self) -> int:
        """|p| = 2^deg p."""
        return 1 << self.degree

    def __str__(self) -> str:
        terms = []
        for j in range(self.degree, -1, -1):
            if self.mask >> j & 1:
                terms.append("1" if j == 0 else "t" if j == 1 else f"t^{j}")
        return " + ".join(terms)


def mobius(n: int) -> int:
    """Moebius function mu(n)."""
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def necklace_count(d: int) -> int:
    """Number of monic irreducibles of degree d: (1/d) sum_{e|d} mu(e) 2^{d/e}."""
    if d < 1:
        raise ValidationError(f"Degree must be positive, got {d}")
    total = sum(mobius(e) << (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d


def is_irreducible(p: MonicPoly2) -> bool:
    """Trial division by every monic irreducible of degree up to deg(p) / 2."""
    if p.degree < 1:
        return False
    poly = Gf2Poly(p.mask)
    for e in range(1, p.degree // 2 + 1):
        for q in irreducibles(e):
            if poly.divmod(Gf2Poly(q.mask))[1].mask == 0:
                return False
    return True


def _clmul(values: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros_like(values)
    j = 0
    while p:
        if p & 1:
            out ^= values << np.uint64(j)
        p >>= 1
        j += 1
    return out


@lru_cache(maxsize=None)
def _irreducible_masks(d: int) -> Tuple[int, ...]:
    # Every reducible monic of degree d has an irreducible factor of degree
    # e <= d/2; strike out all products p*q with deg q = d - e.
    reducible = np.zeros(1 << d, dtype=bool)
    top = np.uint64(1 << d)
    for e in range(1, d // 2 + 1):
        cofactors = np.arange(1 << (d - e), dtype=np.uint64) | np.uint64(1 << (d - e))
        for p in _irreducible_masks(e):
            products = _clmul(cofactors, p)
            reducible[(products ^ top).astype(np.int64)] = True
    low = np.flatnonzero(~reducible).astype(np.int64)
    return tuple(int(v) | (1 << d) for v in low.tolist())


def irreducibles(d: int) -> List[MonicPoly2]:
    """
    All monic irreducibles of degree d, ascending by mask.

    Reducible candidates are struck out by multiplying every lower-degree
    irreducible with every cofactor; the count is checked against the
    necklace formula.

    Raises:
        ValidationError: If d is outside 1..20 or the count check fails

    Example:
        >>> [str(p) for p in irreducibles(1)]
        ['t', 't + 1']
    """
    if not 1 <= d <= MAX_IRREDUCIBLE_DEGREE:
        raise ValidationError(
            f"Degree must lie in 1..{MAX_IRREDUCIBLE_DEGREE}, got {d}"
        )
    found = [MonicPoly2(m) for m in _irreducible_masks(d)]
    expected = necklace_count(d)
    if len(found) != expected:
        raise ValidationError(
            f"Found {len(found)} irreducibles of degree {d}, expected {expected}"
        )
    logger.debug("degree %d: %d irreducibles", d, len(found))
    return found


def degree_identity_holds(d: int) -> bool:
    """sum_{e|d} e I(e) = 2^d, with I(e) counted by enumeration."""
    divisors = [e for e in range(1, d + 1) if d % e == 0]
    return sum(e * len(irreducibles(e)) for e in divisors) == 1 << d


@dataclass(frozen=True)
class PredicateCharacter:
    """A named rule on monic polynomials."""

    name: str
    rule: Callable[[MonicPoly2], int]

    def __call__(self, f: MonicPoly2) -> int:
        return int(self.rule(f))


def _delta_rule(f: MonicPoly2) -> int:
    d = f.degree
    return int(d > 0 and d in odd_squares(d))


CHARACTERS: Dict[str, Callable[[MonicPoly2], int]] = {
    "delta": _delta_rule,
    "one": lambda f: 1,
    "zero": lambda f: 0,
}

# Residue rule for the sign character; unset because "p = 1, 3 (mod 4)"
# has no standard meaning for p in F_2[t].
HECKE_RESIDUE: Optional[Callable[[MonicPoly2], int]] = None


def hecke_character(residue: Callable[[MonicPoly2], int]) -> PredicateCharacter:
    """Sign character +1 when residue(p) = 1 (mod 4), -1 when 3, else 0."""

    def rule(f: MonicPoly2) -> int:
        r = residue(f) % 4
        return 1 if r == 1 else -1 if r == 3 else 0

    return PredicateCharacter("hecke", rule)


def character(name: str) -> PredicateCharacter:
    """
    Look up a character by name: ``delta``, ``one``, ``zero`` or ``hecke``.

    Raises:
        ValidationError: If the name is unknown or the hecke rule is unset
    """
    if name == "hecke":
        if HECKE_RESIDUE is None:
            raise ValidationError(
                "The hecke character has no residue rule; use hecke_character(rule)"
            )
        return hecke_character(HECKE_RESIDUE)
    if name not in CHARACTERS:
        names = ", ".join(sorted(CHARACTERS) + ["hecke"])
        raise ValidationError(f"Unknown character {name!r}; expected one of {names}")
    return PredicateCharacter(name, CHARACTERS[name])


@dataclass(frozen=True)
class TruncatedSeries:
    """
    sum_{d <= max_degree} a_d u^d with exact rational coefficients.
    """

    max_degree: int
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        coeffs = coeffs + (Fraction(0),) * (self.max_degree + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", coeffs[: self.max_degree + 1])

    @classmethod
    def one(cls, max_degree: int) -> "TruncatedSeries":
        return cls(max_degree, (Fraction(1),))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        D = min(self.max_degree, other.max_degree)
        out = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coefficients[: D + 1]):
            if a == 0:
                continue
            for j in range(D + 1 - i):
                out[i + j] += a * other.coefficients[j]
        return TruncatedSeries(D, tuple(out))

    def __getitem__(self, degree: int) -> Fraction:
        return self.coefficients[degree]

    def coefficients_as_strings(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    def evaluate(self, s: complex) -> complex:
        """Numeric value of the truncation at u = 2^{-s}."""
        u = cmath.exp(-s * math.log(2))
        return sum(complex(float(c)) * u**d for d, c in enumerate(self.coefficients))


def _check_series_degree(D: int) -> None:
    if not 0 <= D <= MAX_SERIES_DEGREE:
        raise ValidationError(
            f"Series degree must lie in 0..{MAX_SERIES_DEGREE}, got {D}"
        )


def euler_product(chi: PredicateCharacter, D: int) -> TruncatedSeries:
    """
    prod_{deg p <= D} (1 - chi(p) u^{deg p})^{-1}, truncated at u^D.

    Primes of one degree with one character value are taken together:
    (1 - a u^e)^{-c} = sum_k C(c + k - 1, k) a^k u^{ek}.

    Example:
        >>> euler_product(character("one"), 3).coefficients_as_strings()
        ['1', '2', '4', '8']
    """
    _check_series_degree(D)
    series = TruncatedSeries.one(D)
    for e in range(1, D + 1):
        groups: Dict[int, int] = {}
        for p in irreducibles(e):
            a = chi(p)
            if a:
                groups[a] = groups.get(a, 0) + 1
        for a, c in sorted(groups.items()):
            factor = [Fraction(0)] * (D + 1)
            for k in range(D // e + 1):
                factor[e * k] = Fraction(math.comb(c + k - 1, k) * a**k)
            series = series * TruncatedSeries(D, tuple(factor))
    return series


def dirichlet_series(chi: PredicateCharacter, D: int) -> TruncatedSeries:
    """
    sum over monic f with deg f <= D of chi(f) u^{deg f}.

    The constant polynomial contributes 1 (chi(1) = 1), matching the
    constant term of every Euler product.

    Example:
        >>> dirichlet_series(character("delta"), 1).coefficients_as_strings()
        ['1', '2']
    """
    _check_series_degree(D)
    coeffs = [Fraction(1)]
    for d in range(1, D + 1):
        total = sum(chi(MonicPoly2(m)) for m in range(1 << d, 1 << (d + 1)))
        coeffs.append(Fraction(total))
    return TruncatedSeries(D, tuple(coeffs))


@dataclass(frozen=True)
class ComparisonRow:
    """One degree of the Euler/Dirichlet comparison (CSV columns in order)."""

    degree: int
    euler: Fraction
    dirichlet: Fraction

    @property
    def equal(self) -> bool:
        return self.euler == self.dirichlet

    def as_row(self) -> List[str]:
        return [
            str(self.degree),
            str(self.euler),
            str(self.dirichlet),
            str(self.equal).lower(),
        ]


COMPARISON_HEADER = ["degree", "euler_coeff", "dirichlet_coeff", "equal"]


def compare_series(chi: PredicateCharacter, D: int) -> List[ComparisonRow]:
    """Per-degree comparison of the Euler product and the Dirichlet series."""
    euler = euler_product(chi, D)
    dirichlet = dirichlet_series(chi, D)
    return [ComparisonRow(d, euler[d], dirichlet[d]) for d in range(D + 1)]


def check_norm(q: int) -> None:
    """Raise unless q is a prime power, the norm of a place."""
    if q >= 2:
        p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
        rest = q
        while rest % p == 0:
            rest //= p
        if rest == 1:
            return
    raise ValidationError(f"q must be a prime power >= 2, got {q}")


def local_factor(o: Observer, P: TruthTable, q: int = 2) -> IntPoly:
    """
    det(I - u A) for A the integer lift of O restricted to the Krylov space of P.

    The polynomial is in u = q^{-s} and does not depend on the norm q of
    the place, which is only validated here; :func:`evaluate_local_factor`
    substitutes it. See :data:`LOCAL_FACTOR_CAVEAT`.

    Raises:
        ValidationError: If P is zero or q is not a prime power
        ClosureError: If the Krylov space does not close within its cap

    Example:
        >>> from obsaudit.boolfun import atom
        >>> local_factor(Observer(3), atom(3, 7)).format("u", ascending=True)
        '1 - u^2'
    """
    check_norm(q)
    space = krylov_space(o, P)
    if not restriction_charpoly_consistent(space):
        raise ValidationError(
            "Lifted characteristic polynomial does not reduce to the relation"
        )
    return char_poly_lift(space.restriction).reversed(space.dimension)


def evaluate_local_factor(factor: IntPoly, q: int, s: complex) -> complex:
    """L_v(P, s) = 1 / det(I - q^{-s} A)."""
    check_norm(q)
    return 1 / factor.evaluate(cmath.exp(-s * math.log(q)))
