"""
The classical code spanned by an O-orbit.

Codewords are truth tables of arity n, so the block length is 2^n. The
orbit f, O f, O^2 f, ... is collected until it repeats; its distinct
nonzero elements generate the code. Minimum distance is exact by
Gray-code enumeration while the dimension is at most 16, and a sampled
upper bound (flagged ESTIMATE) beyond that.

Example:
    >>> from obsaudit.boolfun import TruthTable
    >>> from obsaudit.observer import Observer
    >>> even = TruthTable.from_function(3, lambda x: bin(x).count("1") % 2 == 0)
    >>> orbit_code(Observer(3), even).parameters
    (8, 2, 4)
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .boolfun import TruthTable, popcount_words
from .exceptions import ClosureError, ValidationError
from .gf2linalg import Gf2Matrix
from .observer import Observer
from .verdict import AuditVerdict, Status

logger = logging.getLogger(__name__)

EXACT_DIMENSION = 16
DEFAULT_SAMPLES = 1 << 16


@dataclass(frozen=True)
class CodeReport:
    """
    Parameters of the code generated by a set of tables.

    Attributes:
        generators: the generating tables, in orbit order
        length: N = 2^n
        dimension: k = GF(2) rank of the generators
        distance: minimum nonzero weight, None when k = 0
        exact: False when the distance is a sampled upper bound
    """

    n: int
    generators: Tuple[TruthTable, ...]
    length: int
    dimension: int
    distance: Optional[int]
    exact: bool = True

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @property
    def parameters(self) -> Tuple[int, int, Optional[int]]:
        return self.length, self.dimension, self.distance

    @property
    def degenerate(self) -> bool:
        return self.dimension == 0

    def claimed(self) -> Tuple[int, int, float]:
        """The claimed [[2^n, 1, 2^(n/2)]]."""
        return 1 << self.n, 1, 2.0 ** (self.n / 2)

    def generator_hex_rows(self) -> List[str]:
        if not self.generators:
            return []
        return Gf2Matrix.from_tables(list(self.generators)).to_hex_rows()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "generators": self.generator_count,
            "parameters": [self.length, self.dimension, self.distance],
            "exact": self.exact,
            "generator_rows": self.generator_hex_rows(),
        }


def _basis_words(generators: Sequence[TruthTable]) -> np.ndarray:
    echelon = Gf2Matrix.from_tables(list(generators)).row_reduce()
    return echelon.matrix.data[: echelon.rank]


def _gray_min_weight(basis: np.ndarray) -> int:
    k = basis.shape[0]
    word = np.zeros(basis.shape[1], dtype=np.uint64)
    best = None
    for i in range(1, 1 << k):
        # Gray code: step i flips the basis row at the lowest set bit of i
        word ^= basis[(i & -i).bit_length() - 1]
        w = popcount_words(word)
        if best is None or w < best:
            best = w
    return int(best)


def _sampled_min_weight(basis: np.ndarray, samples: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    k = basis.shape[0]
    best = min(popcount_words(row) for row in basis)
    for _ in range(samples):
        coeffs = rng.integers(0, 2, size=k).astype(bool)
        if not coeffs.any():
            continue
        word = np.bitwise_xor.reduce(basis[coeffs], axis=0)
        best = min(best, popcount_words(word))
    return int(best)


def code_from_generators(
    generators: Sequence[TruthTable], samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> CodeReport:
    """
    Parameters of the span of the given tables.

    Raises:
        ValidationError: If no generators are given or arities differ
    """
    if not generators:
        raise ValidationError("At least one generator is required")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValidationError("Generators must share one arity")
    nonzero = [g for g in generators if not g.is_zero()]
    if not nonzero:
        return CodeReport(n, (), 1 << n, 0, None)
    basis = _basis_words(nonzero)
    k = basis.shape[0]
    if k <= EXACT_DIMENSION:
        distance, exact = _gray_min_weight(basis), True
    else:
        distance, exact = _sampled_min_weight(basis, samples, seed), False
    logger.debug("code n=%d k=%d d=%d exact=%s", n, k, distance, exact)
    return CodeReport(n, tuple(nonzero), 1 << n, k, distance, exact)


def orbit_elements(
    o: Observer, seed: TruthTable, orbit_cap: int = 64
) -> List[TruthTable]:
    """
    Distinct elements of seed, O seed, O^2 seed, ... in order of appearance.

    Raises:
        ClosureError: If more than ``orbit_cap`` distinct elements appear
    """
    seen = {seed}
    elements = [seed]
    current = o.apply(seed)
    while current not in seen:
        if len(elements) >= orbit_cap:
            raise ClosureError(f"Orbit exceeded cap {orbit_cap}")
        seen.add(current)
        elements.append(current)
        current = o.apply(current)
    return elements


def orbit_code(
    o: Observer, seed: TruthTable, orbit_cap: int = 64, samples: int = DEFAULT_SAMPLES
) -> CodeReport:
    """
    The code generated by the distinct nonzero elements of the O-orbit of seed.

    Example:
        >>> from obsaudit.boolfun import atom
        >>> orbit_code(Observer(3), atom(3, 7)).parameters
        (8, 2, 1)
    """
    generators = [g for g in orbit_elements(o, seed, orbit_cap) if not g.is_zero()]
    if not generators:
        return CodeReport(seed.n, (), seed.size, 0, None)
    return code_from_generators(generators, samples=samples)


def format_claimed(n: int) -> str:
    d = 2.0 ** (n / 2)
    shown = str(int(d)) if d.is_integer() else f"2^({n}/2) = {d:.4f}"
    return f"[[{1 << n}, 1, {shown}]]"


def code_audit(report: CodeReport, label: str = "") -> AuditVerdict:
    """
    Compare computed [N, k, d] with the claimed [[2^n, 1, 2^(n/2)]].

    A non-integer claimed distance (odd n) cannot match and is flagged.
    """
    n = report.n
    claimed_d = 2.0 ** (n / 2)
    notes = ["classical span of the orbit; no stabilizer structure is defined"]
    if not claimed_d.is_integer():
        notes.append(f"claimed distance 2^({n}/2) is not an integer")
    if not report.exact:
        notes.append("distance is a sampled upper bound (ESTIMATE)")
    if report.degenerate:
        notes.append("degenerate: the orbit spans only zero")

    computed = f"[{report.length}, {report.dimension}, {report.distance}]"
    if report.exact:
        matches = report.parameters == (1 << n, 1, claimed_d)
        status = Status.CONFIRMED if matches else Status.REFUTED
    else:
        status = Status.UNDECIDABLE
    suffix = f"-{label}" if label else ""
    return AuditVerdict(
        claim_id=f"S11.2-code-parameters-n{n}{suffix}",
        paper_ref="S11.2 Theorem (code parameters)",
        quote="parameters [[2^n, 1, 2^{n/2}]] at level n",
        claimed=format_claimed(n),
        computed=computed,
        status=status,
        rerun=f"obsaudit code --n {n}",
        note="; ".join(notes),
    )

