"""
Finite-level Cech cochains built from a predicate and the Boolean join.

Points of {0,1}^n are masks and the join x v y is bitwise OR. From a
predicate A the module builds

- the triple-indexed cochain c(x,y,z) = A(x|y) + A(y|z) + A(x|z) + A(x|y|z)
- its simplicial coboundary over the nerve of the full point set
- the pair system b(x) + b(y) + b(x|y) = A(x|y), solved exactly

Cochains are packed like truth tables: a 1-cochain on {0,1}^n is a table
of arity n, a 2-cochain indexed by pairs (x, y) is a table of arity 2n
at index x + 2^n y.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .boolfun import TruthTable
from .exceptions import CapExceededError, ValidationError
from .verdict import AuditVerdict, decide

logger = logging.getLogger(__name__)

MAX_SOLVE_ARITY = 10
MAX_TRIPLE_ARITY = 5


@dataclass(frozen=True)
class Cochain1:
    """A function b on the points of {0,1}^n."""

    n: int
    table: TruthTable

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class Cochain2:
    """A function on ordered pairs of points, packed at index x + 2^n y."""

    n: int
    table: TruthTable

    def __call__(self, x: int, y: int) -> int:
        return self.table[x | y << self.n]

    @classmethod
    def from_array(cls, n: int, values: np.ndarray) -> "Cochain2":
        """values[x, y] -> packed cochain."""
        packed = np.asarray(values, dtype=np.uint8).T.reshape(-1)
        return cls(n, TruthTable.from_bits(2 * n, packed))


def _points(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def cocycle3(A: TruthTable) -> Callable[[int, int, int], int]:
    """
    c(x, y, z) as a function on triples of point masks.

    Example:
        >>> from obsaudit.boolfun import TruthTable
        >>> c = cocycle3(TruthTable.from_bits(1, [0, 1]))
        >>> c(1, 0, 0)
        1
    """

    def c(x: int, y: int, z: int) -> int:
        return (A[x | y] + A[y | z] + A[x | z] + A[x | y | z]) & 1

    return c


def join_values(A: TruthTable) -> Cochain2:
    """The pair cochain (x, y) -> A(x | y)."""
    pts = _points(A.n)
    return Cochain2.from_array(A.n, A.bits()[np.bitwise_or.outer(pts, pts)])


def cocycle_array(A: TruthTable) -> np.ndarray:
    """c as a uint8 array of shape (2^n, 2^n, 2^n)."""
    if A.n > MAX_TRIPLE_ARITY:
        raise CapExceededError(f"Triple enumeration limited to n <= {MAX_TRIPLE_ARITY}")
    bits = A.bits()
    pts = _points(A.n)
    x = pts[:, None, None]
    y = pts[None, :, None]
    z = pts[None, None, :]
    return bits[x | y] ^ bits[y | z] ^ bits[x | z] ^ bits[x | y | z]


def coboundary_of_cocycle(A: TruthTable) -> np.ndarray:
    """delta c(w,x,y,z) = c(x,y,z) + c(w,y,z) + c(w,x,z) + c(w,x,y), shape (2^n,)*4."""
    c = cocycle_array(A)
    return c[None, :, :, :] ^ c[:, None, :, :] ^ c[:, :, None, :] ^ c[:, :, :, None]


def is_symmetric(A: TruthTable) -> bool:
    """Whether c is invariant under all permutations of its arguments."""
    c = cocycle_array(A)
    axes = [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return all(np.array_equal(c, c.transpose(p)) for p in axes)


@dataclass(frozen=True)
class CoboundaryResult:
    """
    Outcome of solving b(x) + b(y) + b(x|y) = A(x|y) over all pairs x <= y.

    Attributes:
        solution: a solution b, None when the system is inconsistent
        certificate: pairs whose equations sum to 0 = 1 (empty when solvable)
    """

    n: int
    solution: Optional[Cochain1]
    certificate: Tuple[Tuple[int, int], ...] = ()

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def _verify(A: TruthTable, b: np.ndarray) -> bool:
    pts = _points(A.n)
    joins = np.bitwise_or.outer(pts, pts)
    lhs = b[:, None] ^ b[None, :] ^ b[joins]
    return Cochain2.from_array(A.n, lhs) == join_values(A)


def coboundary_solve(A: TruthTable) -> CoboundaryResult:
    """
    Solve the pair system by incremental Gauss-Jordan elimination.

    Unknowns are b(0..2^n-1); bit 2^n of each equation holds its right-hand
    side. Each stored row remembers which input equations it combines, so
    an inconsistent equation yields the set of pairs that sum to 0 = 1.
    A returned solution is always substituted back into every pair.

    Raises:
        CapExceededError: If n exceeds 10

    Example:
        >>> from obsaudit.boolfun import TruthTable
        >>> coboundary_solve(TruthTable.from_bits(1, [0, 1])).certificate
        ((0, 0), (0, 1))
    """
    n = A.n
    if n > MAX_SOLVE_ARITY:
        raise CapExceededError(f"Coboundary solve limited to n <= {MAX_SOLVE_ARITY}")
    size = 1 << n
    rhs_bit = 1 << size
    values = A.bits().tolist()

    rows: Dict[int, Tuple[int, int]] = {}
    used: List[Tuple[int, int]] = []
    for x in range(size):
        for y in range(x, size):
            j = x | y
            eq = ((1 << x) ^ (1 << y) ^ (1 << j)) | (rhs_bit if values[j] else 0)
            combo = 0
            for var in {x, y, j}:
                if eq >> var & 1 and var in rows:
                    row, row_combo = rows[var]
                    eq ^= row
                    combo ^= row_combo
            if eq == rhs_bit:
                pairs = [used[i] for i in range(len(used)) if combo >> i & 1]
                certificate = tuple(sorted(pairs + [(x, y)]))
                logger.debug("pair system inconsistent at (%d, %d)", x, y)
                return CoboundaryResult(n, None, certificate)
            if eq == 0:
                continue
            combo ^= 1 << len(used)
            used.append((x, y))
            pivot = (eq & (rhs_bit - 1)).bit_length() - 1
            for var, (row, row_combo) in list(rows.items()):
                if row >> pivot & 1:
                    rows[var] = (row ^ eq, row_combo ^ combo)
            rows[pivot] = (eq, combo)

    b = np.zeros(size, dtype=np.uint8)
    for pivot, (row, _) in rows.items():
        b[pivot] = 1 if row & rhs_bit else 0
    if not _verify(A, b):
        raise ValidationError("Coboundary solution failed substitution")
    return CoboundaryResult(n, Cochain1(n, TruthTable.from_bits(n, b)))


def cocycle_audit(A: TruthTable, label: str = "A") -> List[AuditVerdict]:
    """
    Two verdicts for predicate A: whether delta c vanishes on every
    quadruple, and whether c fails to be a coboundary of the pair system.

    Example:
        >>> from obsaudit.boolfun import TruthTable
        >>> [v.status.value for v in cocycle_audit(TruthTable.ones(2), "ones")]
        ['CONFIRMED', 'REFUTED']
    """
    delta = coboundary_of_cocycle(A)
    nonzero = int(delta.sum())
    closed = nonzero == 0
    computed = "delta c = 0 on all quadruples"
    if not closed:
        w, x, y, z = np.argwhere(delta)[0].tolist()
        computed = (
            f"delta c != 0 on {nonzero} of {delta.size} quadruples, "
            f"e.g. ({w},{x},{y},{z})"
        )

    result = coboundary_solve(A)
    if result.solvable:
        trivial = "solvable: c is a coboundary of the pair system"
    else:
        shown = ", ".join(f"({x},{y})" for x, y in result.certificate[:4])
        trivial = f"unsolvable; inconsistent pairs {shown}"
        if len(result.certificate) > 4:
            trivial += f" and {len(result.certificate) - 4} more"

    rerun = f"obsaudit cocycle --n {A.n} --table {A.to_hex()}"
    note = "nerve of the full point set; join = bitwise OR"
    return [
        AuditVerdict(
            claim_id=f"S7.1-cocycle-closed-{label}",
            paper_ref="S7.1 proof",
            quote="The coboundary delta c = 0",
            claimed="delta c = 0",
            computed=computed,
            status=decide(closed),
            rerun=rerun,
            note=note,
        ),
        AuditVerdict(
            claim_id=f"S7.1-nontrivial-{label}",
            paper_ref="S7.1 proof",
            quote="Suppose c = delta b",
            claimed="no b with A(x|y) = b(x) + b(y) + b(x|y)",
            computed=trivial,
            status=decide(not result.solvable),
            rerun=rerun,
            note=note,
        ),
    ]
