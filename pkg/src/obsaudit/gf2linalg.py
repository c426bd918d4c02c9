"""
Exact linear algebra over GF(2).

Matrices are dense, with each row packed little-endian into uint64 words,
so a row operation is one vectorized XOR. The module provides:

- Gf2Matrix with row reduction, rank and right kernel
- fixed_space(n): the kernel of O_n + I
- krylov_space: span of seed, O seed, O^2 seed, ... and the restriction of O
- minimal_polynomial: Berlekamp-Massey on scalar probes <u, O^k seed>
- char_poly_lift: characteristic polynomial of the 0/1 integer lift
- Gf2Poly / IntPoly coefficient types (lowest degree first)

Example:
    >>> from obsaudit.gf2linalg import fixed_space
    >>> fixed_space(3).dimension
    4
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, List, Optional, Sequence, Tuple

import numpy as np

from .boolfun import TruthTable, parity_words, word_count
from .config import LIMITS
from .exceptions import CapExceededError, ClosureError, ProbeError, ValidationError

if TYPE_CHECKING:
    from .observer import Observer

logger = logging.getLogger(__name__)

_LE_WORD = np.dtype("<u8")
_ONE = np.uint64(1)


def _words_for(cols: int) -> int:
    return max(1, (cols + 63) // 64)


class Gf2Matrix:
    """
    Dense matrix over GF(2) with packed rows.

    Bit j of row i lives in word j // 64 at position j % 64. Instances are
    immutable; arithmetic returns new matrices.

    Attributes:
        rows: number of rows
        cols: number of columns
        data: read-only uint64 array of shape (rows, ceil(cols / 64))
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray):
        data = np.ascontiguousarray(data, dtype=np.uint64)
        if data.shape != (rows, _words_for(cols)):
            raise ValidationError(
                f"Packed data of shape {data.shape} does not fit a {rows}x{cols} matrix"
            )
        data = data.copy()
        data.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, np.zeros((rows, _words_for(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, size: int) -> "Gf2Matrix":
        idx = np.arange(size)
        return cls.from_positions(size, size, idx, idx)

    @classmethod
    def from_positions(
        cls, rows: int, cols: int, row_idx: np.ndarray, col_idx: np.ndarray
    ) -> "Gf2Matrix":
        """Matrix with a 1 at every (row_idx[k], col_idx[k]); repeats cancel."""
        data = np.zeros((rows, _words_for(cols)), dtype=np.uint64)
        row_idx = np.asarray(row_idx, dtype=np.int64)
        col_idx = np.asarray(col_idx, dtype=np.int64)
        bits = np.left_shift(_ONE, (col_idx % 64).astype(np.uint64))
        np.bitwise_xor.at(data, (row_idx, col_idx // 64), bits)
        return cls(rows, cols, data)

    @classmethod
    def from_dense(cls, dense: Any) -> "Gf2Matrix":
        """Pack a 2-D array-like of 0/1 values."""
        arr = np.asarray(dense, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValidationError(f"Expected a 2-D array, got {arr.ndim} dimensions")
        rows, cols = arr.shape
        packed = np.packbits(arr, axis=1, bitorder="little")
        padded = np.zeros((rows, _words_for(cols) * 8), dtype=np.uint8)
        padded[:, : packed.shape[1]] = packed
        return cls(rows, cols, padded.view(_LE_WORD).astype(np.uint64))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        if not rows:
            raise ValidationError("Cannot build a matrix from zero rows")
        return cls.from_dense(rows)

    @classmethod
    def from_tables(cls, tables: Sequence[TruthTable]) -> "Gf2Matrix":
        """Stack truth tables as rows (column index = point)."""
        if not tables:
            raise ValidationError("Cannot build a matrix from zero tables")
        n = tables[0].n
        if any(t.n != n for t in tables):
            raise ValidationError("All tables must share one arity")
        return cls(len(tables), 1 << n, np.stack([t.words for t in tables]))

    def to_dense(self) -> np.ndarray:
        """Unpacked uint8 array of shape (rows, cols)."""
        raw = self.data.astype(_LE_WORD).view(np.uint8).reshape(self.rows, -1)
        return np.unpackbits(raw, axis=1, bitorder="little")[:, : self.cols]

    def to_lists(self) -> List[List[int]]:
        return self.to_dense().astype(int).tolist()

    def row_int(self, i: int) -> int:
        return int.from_bytes(self.data[i].astype(_LE_WORD).tobytes(), "little")

    def to_hex_rows(self) -> List[str]:
        width = max(1, (self.cols + 3) // 4)
        return [format(self.row_int(i), f"0{width}x") for i in range(self.rows)]

    def row_table(self, i: int, n: int) -> TruthTable:
        """Row i read as a truth table on {0,1}^n (requires cols = 2^n)."""
        if self.cols != 1 << n:
            raise ValidationError(f"Rows have {self.cols} columns, not 2^{n}")
        return TruthTable(n, self.data[i][: word_count(n)])

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return int(self.data[i, j // 64] >> np.uint64(j % 64)) & 1

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("Matrix shapes differ")
        return Gf2Matrix(self.rows, self.cols, self.data ^ other.data)

    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_dense(self.to_dense().T)

    def mul_vector(self, vector: Sequence[int]) -> np.ndarray:
        """A . v over GF(2) for a 0/1 vector of length cols, as uint8 of length rows."""
        packed = Gf2Matrix.from_dense([vector])
        if packed.cols != self.cols:
            raise ValidationError(
                f"Vector of length {packed.cols}, expected {self.cols}"
            )
        anded = self.data & packed.data[0]
        return np.array([parity_words(row) for row in anded], dtype=np.uint8)

    def row_reduce(self) -> "EchelonForm":
        """Reduced row echelon form with leftmost pivots."""
        mat = np.array(self.data, copy=True)
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            w, b = divmod(c, 64)
            shift = np.uint64(b)
            column = (mat[r:, w] >> shift) & _ONE
            hits = np.flatnonzero(column)
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                mat[[r, p]] = mat[[p, r]]
            targets = ((mat[:, w] >> shift) & _ONE).astype(bool)
            targets[r] = False
            if targets.any():
                mat[targets] ^= mat[r]
            pivots.append(c)
            r += 1
        return EchelonForm(Gf2Matrix(self.rows, self.cols, mat), tuple(pivots))

    def rank(self) -> int:
        return len(self.row_reduce().pivots)


@dataclass(frozen=True)
class EchelonForm:
    """Reduced row echelon form and its pivot columns."""

    matrix: Gf2Matrix
    pivots: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


@dataclass(frozen=True)
class KernelBasis:
    """
    Basis of a right nullspace.

    Attributes:
        dimension: number of basis vectors
        vectors: Gf2Matrix whose rows are the basis vectors
        rank: rank of the matrix the kernel was taken of
    """

    dimension: int
    vectors: Gf2Matrix
    rank: int

    def tables(self, n: int) -> List[TruthTable]:
        """Basis vectors as truth tables (columns indexed by point)."""
        return [self.vectors.row_table(i, n) for i in range(self.dimension)]

    def contains(self, vector: Sequence[int]) -> bool:
        """Whether a 0/1 vector lies in the span (rank does not grow)."""
        if self.dimension == 0:
            return not any(vector)
        row = np.asarray(vector, dtype=np.uint8)
        stacked = np.vstack([self.vectors.to_dense(), row])
        return Gf2Matrix.from_dense(stacked).rank() == self.dimension


def kernel(a: Gf2Matrix) -> KernelBasis:
    """
    Right nullspace basis of A by reduced row echelon form.

    One basis vector per free column f: e_f plus, for each pivot row with
    a 1 in column f, the pivot column of that row. Every returned vector
    is re-checked against A.

    Example:
        >>> kernel(Gf2Matrix.identity(8)).dimension
        0
    """
    echelon = a.row_reduce()
    pivots = list(echelon.pivots)
    free = [c for c in range(a.cols) if c not in set(pivots)]
    logger.debug("kernel of %dx%d matrix: rank %d", a.rows, a.cols, len(pivots))
    if not free:
        return KernelBasis(0, Gf2Matrix.zeros(0, a.cols), len(pivots))

    reduced = echelon.matrix.to_dense()[: len(pivots)]
    basis = np.zeros((len(free), a.cols), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    if pivots:
        basis[:, pivots] = reduced[:, free].T
    vectors = Gf2Matrix.from_dense(basis)
    for i in range(vectors.rows):
        if a.mul_vector(basis[i]).any():
            raise ValidationError("Kernel vector failed the A.v = 0 check")
    return KernelBasis(len(free), vectors, len(pivots))


def fixed_space(n: int) -> KernelBasis:
    """
    Kernel of O_n + I, in ascending point order.

    Raises:
        CapExceededError: If n exceeds the dense cap

    Example:
        >>> fixed_space(2).dimension
        0
    """
    from .observer import AtomOrder, Observer

    matrix = Observer(n).matrix(AtomOrder.ASCENDING)
    return kernel(matrix + Gf2Matrix.identity(matrix.rows))


@dataclass(frozen=True)
class Gf2Poly:
    """
    Polynomial over GF(2) stored as a bitmask (bit j = coefficient of x^j).
    """

    mask: int

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int]) -> "Gf2Poly":
        mask = 0
        for j, c in enumerate(coefficients):
            if c & 1:
                mask |= 1 << j
        return cls(mask)

    @classmethod
    def monomial(cls, degree: int) -> "Gf2Poly":
        return cls(1 << degree)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return self.mask.bit_length() - 1

    def coefficients(self) -> List[int]:
        return [self.mask >> j & 1 for j in range(self.degree + 1)]

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        a, b, out = self.mask, other.mask, 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return Gf2Poly(out)

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.mask ^ other.mask)

    def divmod(self, other: "Gf2Poly") -> Tuple["Gf2Poly", "Gf2Poly"]:
        if other.mask == 0:
            raise ValidationError("Division by the zero polynomial")
        q, r = 0, self.mask
        d = other.degree
        while r and r.bit_length() - 1 >= d:
            s = r.bit_length() - 1 - d
            q |= 1 << s
            r ^= other.mask << s
        return Gf2Poly(q), Gf2Poly(r)

    def gcd(self, other: "Gf2Poly") -> "Gf2Poly":
        a, b = self, other
        while b.mask:
            a, b = b, a.divmod(b)[1]
        return a

    def lcm(self, other: "Gf2Poly") -> "Gf2Poly":
        if self.mask == 0 or other.mask == 0:
            return Gf2Poly(0)
        return (self * other).divmod(self.gcd(other))[0]

    def apply(self, observer: "Observer", f: TruthTable) -> TruthTable:
        """Evaluate p(O) on f by Horner's rule."""
        acc = TruthTable.zeros(f.n)
        for c in reversed(self.coefficients()):
            acc = observer.apply(acc)
            if c:
                acc = acc ^ f
        return acc

    def annihilates(self, observer: "Observer", f: TruthTable) -> bool:
        return self.apply(observer, f).is_zero()

    def __str__(self) -> str:
        return _format_terms([(j, c) for j, c in enumerate(self.coefficients())], "x")


@dataclass(frozen=True)
class IntPoly:
    """
    Integer polynomial, coefficients lowest degree first, trailing zeros stripped.
    """

    coefficients: Tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def reduce_mod2(self) -> Gf2Poly:
        return Gf2Poly.from_coefficients([c % 2 for c in self.coefficients])

    def reversed(self, degree: int) -> "IntPoly":
        """x^degree . p(1/x) for degree >= self.degree."""
        padded = list(self.coefficients) + [0] * (degree + 1 - len(self.coefficients))
        return IntPoly(tuple(reversed(padded)))

    def evaluate(self, value: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def to_list(self) -> List[int]:
        return list(self.coefficients)

    def format(self, var: str = "x", ascending: bool = False) -> str:
        return _format_terms(list(enumerate(self.coefficients)), var, ascending)

    def __str__(self) -> str:
        return self.format()


def _format_terms(
    terms: List[Tuple[int, int]], var: str, ascending: bool = False
) -> str:
    parts = []
    for power, c in terms if ascending else reversed(terms):
        if c == 0:
            continue
        if power == 0:
            body = str(abs(c))
        else:
            base = var if power == 1 else f"{var}^{power}"
            body = base if abs(c) == 1 else f"{abs(c)}*{base}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class KrylovSpace:
    """
    The O-cyclic subspace generated by a seed.

    Attributes:
        basis: seed, O seed, ..., O^{k-1} seed (linearly independent)
        restriction: k x k matrix of O in that basis; entry (i, j) is the
            coefficient of basis[i] in O(basis[j]) (a companion matrix)
        relation: x^k + sum c_j x^j with O^k seed = sum c_j O^j seed
    """

    basis: Tuple[TruthTable, ...]
    restriction: Gf2Matrix
    relation: Gf2Poly

    @property
    def dimension(self) -> int:
        return len(self.basis)


def krylov_space(observer: "Observer", seed: TruthTable, cap: int = 64) -> KrylovSpace:
    """
    Iterate O on the seed until the iterate is a combination of earlier ones.

    Args:
        observer: the operator
        seed: nonzero starting table
        cap: largest dimension allowed before giving up

    Raises:
        ValidationError: If the seed is zero
        ClosureError: If no dependency appears within ``cap`` iterates

    Example:
        >>> from obsaudit.boolfun import atom
        >>> from obsaudit.observer import Observer
        >>> krylov_space(Observer(3), atom(3, 7)).restriction.to_lists()
        [[0, 1], [1, 0]]
    """
    if seed.is_zero():
        raise ValidationError("Krylov space of the zero table is not defined")
    echelon: List[Tuple[int, int, int]] = []
    basis: List[TruthTable] = []
    current = seed
    while True:
        k = len(basis)
        vector = current.to_int()
        combo = 1 << k
        for pivot, row, row_combo in echelon:
            if vector >> pivot & 1:
                vector ^= row
                combo ^= row_combo
        if vector == 0:
            break
        if k == cap:
            raise ClosureError(f"Krylov space exceeded dimension cap {cap}")
        echelon.append((vector.bit_length() - 1, vector, combo))
        echelon.sort(key=lambda item: -item[0])
        basis.append(current)
        current = observer.apply(current)

    k = len(basis)
    dense = np.zeros((k, k), dtype=np.uint8)
    for j in range(k - 1):
        dense[j + 1, j] = 1
    for i in range(k):
        dense[i, k - 1] = combo >> i & 1
    logger.debug("Krylov space of dimension %d", k)
    return KrylovSpace(tuple(basis), Gf2Matrix.from_dense(dense), Gf2Poly(combo))


def berlekamp_massey(sequence: Sequence[int]) -> Tuple[int, int]:
    """
    Shortest LFSR generating a GF(2) sequence.

    Returns:
        (connection polynomial mask C with C(0) = 1, linear complexity L)
    """
    c, b = 1, 1
    length, m = 0, 1
    for i, s in enumerate(sequence):
        d = s & 1
        for j in range(1, length + 1):
            d ^= (c >> j & 1) & sequence[i - j]
        if d == 0:
            m += 1
        elif 2 * length <= i:
            previous = c
            c ^= b << m
            length = i + 1 - length
            b = previous
            m = 1
        else:
            c ^= b << m
            m += 1
    return c, length


def _reciprocal(connection: int, length: int) -> Gf2Poly:
    mask = 0
    for j in range(length + 1):
        if connection >> (length - j) & 1:
            mask |= 1 << j
    return Gf2Poly(mask)


@dataclass(frozen=True)
class MinimalPolynomial:
    """Result of the recurrence method, with the probe seed for reproducibility."""

    polynomial: Gf2Poly
    probe_seed: int
    probes_used: int


def minimal_polynomial(
    observer: "Observer",
    seed: TruthTable,
    probe_seed: int = 0,
    max_degree: int = 64,
    retries: int = 32,
) -> MinimalPolynomial:
    """
    Minimal polynomial of O on the Krylov space of ``seed``.

    Each probe u gives the scalar sequence <u, O^k seed>; Berlekamp-Massey
    returns a divisor of the minimal polynomial. Candidates from successive
    probes are combined by lcm until one annihilates the seed.

    Raises:
        ProbeError: If no candidate annihilates the seed within ``retries``

    Example:
        >>> from obsaudit.boolfun import atom
        >>> from obsaudit.observer import Observer
        >>> str(minimal_polynomial(Observer(3), atom(3, 7)).polynomial)
        'x^2 + 1'
    """
    if seed.is_zero():
        return MinimalPolynomial(Gf2Poly(1), probe_seed, 0)
    bound = min(seed.size, max_degree)
    iterates = [seed]
    for _ in range(2 * bound - 1):
        iterates.append(observer.apply(iterates[-1]))

    rng = np.random.default_rng(probe_seed)
    candidate = Gf2Poly(1)
    for attempt in range(1, retries + 1):
        probe = TruthTable.random(seed.n, rng)
        sequence = [parity_words(probe.words & t.words) for t in iterates]
        connection, length = berlekamp_massey(sequence)
        candidate = candidate.lcm(_reciprocal(connection, length))
        if candidate.annihilates(observer, seed):
            logger.debug(
                "minimal polynomial degree %d after %d probes",
                candidate.degree,
                attempt,
            )
            return MinimalPolynomial(candidate, probe_seed, attempt)
    raise ProbeError(f"No annihilating polynomial found after {retries} probes")


def char_poly_lift(restriction: Gf2Matrix) -> IntPoly:
    """
    det(xI - A) for the 0/1 integer lift of a square GF(2) matrix.

    Faddeev-LeVerrier recursion in integer arithmetic; every division by
    the step index is exact and is checked.

    Raises:
        ValidationError: If the matrix is not square

    Example:
        >>> str(char_poly_lift(Gf2Matrix.from_rows([[0, 1], [1, 0]])))
        'x^2 - 1'
    """
    if restriction.rows != restriction.cols:
        raise ValidationError(
            f"Expected a square matrix, got {restriction.rows}x{restriction.cols}"
        )
    k = restriction.rows
    a = restriction.to_lists() if k else []
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    m = [[0] * k for _ in range(k)]
    for step in range(1, k + 1):
        m = [
            [sum(a[i][t] * m[t][j] for t in range(k)) for j in range(k)]
            for i in range(k)
        ]
        for i in range(k):
            m[i][i] += coeffs[k - step + 1]
        trace = sum(a[i][t] * m[t][i] for i in range(k) for t in range(k))
        quotient, remainder = divmod(-trace, step)
        if remainder:
            raise ValidationError("Inexact division in characteristic polynomial")
        coeffs[k - step] = quotient
    return IntPoly(tuple(coeffs))


def check_dense_cap(size: int) -> None:
    """Raise when a dense matrix dimension exceeds 2^dense_cap."""
    if size > 1 << LIMITS.dense_cap:
        raise CapExceededError(
            f"Dense dimension {size} exceeds the cap 2^{LIMITS.dense_cap}"
        )


def restriction_charpoly_consistent(space: KrylovSpace) -> bool:
    """The lifted char poly reduces mod 2 to the relation of the companion matrix."""
    return char_poly_lift(space.restriction).reduce_mod2() == space.relation


def solve_left_combinations(vectors: Sequence[Optional[TruthTable]]) -> KernelBasis:
    """Kernel of the matrix whose columns are the given tables (None = zero column)."""
    present = [v for v in vectors if v is not None]
    if not present:
        raise ValidationError("No vectors given")
    n = present[0].n
    rows = [v if v is not None else TruthTable.zeros(n) for v in vectors]
    return kernel(Gf2Matrix.from_tables(rows).transpose())
