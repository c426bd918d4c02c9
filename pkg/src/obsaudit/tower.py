"""
Lift maps between levels of the tower and the compatibility audits.

A lift sends a function on {0,1}^n to one on {0,1}^m (n <= m) that
ignores m - n coordinates:

- ``prefix_ignore``: g(x_1..x_m) = f(x_1..x_n) (the table is tiled)
- ``suffix_embed``:  g(x_1..x_m) = f(x_{m-n+1}..x_m) (each bit repeated)

Every extra coordinate contributes one copy of lift(f) to O_m(lift f), so

    O_m(lift f) = lift(O_n f) + ((m - n) mod 2) lift(f)

and the operators commute with the lift exactly when the gap is even.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from .boolfun import TruthTable, atom, check_arity
from .exceptions import CapExceededError, ValidationError
from .gf2linalg import KernelBasis, fixed_space, solve_left_combinations
from .observer import AtomOrder, Observer, atom_label, order_points
from .verdict import AuditVerdict, Status, decide

logger = logging.getLogger(__name__)

MAX_AUDIT_ARITY = 12


class LiftKind(str, Enum):
    """The two truth-table readings of the transition maps."""

    PREFIX_IGNORE = "prefix_ignore"
    SUFFIX_EMBED = "suffix_embed"


@dataclass(frozen=True)
class LiftMap:
    """
    A lift from level n to level m.

    Raises:
        ValidationError: If n > m or either arity is out of range
    """

    kind: LiftKind
    n: int
    m: int

    def __post_init__(self) -> None:
        check_arity(self.n)
        check_arity(self.m)
        object.__setattr__(self, "kind", LiftKind(self.kind))
        if self.n > self.m:
            raise ValidationError(
                f"Lift must go up the tower, got {self.n} -> {self.m}"
            )

    @property
    def gap(self) -> int:
        return self.m - self.n

    def __call__(self, f: TruthTable) -> TruthTable:
        return lift(self, f)

    def describe(self) -> str:
        return f"{self.kind.value} {self.n}->{self.m}"


def lift(L: LiftMap, f: TruthTable) -> TruthTable:
    """
    Lift f from level L.n to level L.m.

    Raises:
        ValidationError: If f does not have arity L.n

    Example:
        >>> from obsaudit.boolfun import TruthTable
        >>> x1 = TruthTable.from_bits(1, [0, 1])
        >>> lift(LiftMap(LiftKind.SUFFIX_EMBED, 1, 2), x1).bits().tolist()
        [0, 0, 1, 1]
    """
    if f.n != L.n:
        raise ValidationError(f"Lift from level {L.n} applied to arity {f.n}")
    copies = 1 << L.gap
    bits = f.bits()
    if L.kind is LiftKind.PREFIX_IGNORE:
        lifted = np.tile(bits, copies)
    else:
        lifted = np.repeat(bits, copies)
    return TruthTable.from_bits(L.m, lifted)


@dataclass(frozen=True)
class CompatibilityRow:
    """One row of the compatibility table (CSV columns in this order)."""

    lift_kind: str
    n: int
    m: int
    verdict: str
    witness: str

    def as_row(self) -> List[str]:
        return [self.lift_kind, str(self.n), str(self.m), self.verdict, self.witness]


COMPATIBILITY_HEADER = ["lift_kind", "n", "m", "verdict", "witness"]


def _first_violation(L: LiftMap) -> Optional[int]:
    lower, upper = Observer(L.n), Observer(L.m)
    for point in order_points(L.n, AtomOrder.PRINTED):
        f = atom(L.n, point)
        if upper.apply(lift(L, f)) != lift(L, lower.apply(f)):
            return point
    return None


def compatibility_row(L: LiftMap) -> CompatibilityRow:
    """Check O_m(lift f) = lift(O_n f) over the atom basis of level n."""
    point = _first_violation(L)
    witness = "" if point is None else atom_label(L.n, point)
    status = decide(point is None)
    return CompatibilityRow(L.kind.value, L.n, L.m, status.value, witness)


def compatibility_audit(L: LiftMap) -> AuditVerdict:
    """
    Audit the commutation O_m . lift = lift . O_n for one lift map.

    Atoms are tried in the printed order (p_1 first), so the witness is the
    first atom on which the two sides differ.

    Example:
        >>> compatibility_audit(LiftMap(LiftKind.PREFIX_IGNORE, 3, 4)).status.value
        'REFUTED'
    """
    if L.m > MAX_AUDIT_ARITY:
        raise CapExceededError(f"Compatibility audit limited to m <= {MAX_AUDIT_ARITY}")
    row = compatibility_row(L)
    computed = "commutes on all atoms"
    if row.witness:
        computed = f"differs on {row.witness} (gap {L.gap} is odd)"
    logger.debug("compatibility %s: %s", L.describe(), row.verdict)
    return AuditVerdict(
        claim_id=f"S4.1-compatibility-{L.kind.value}-{L.n}-{L.m}",
        paper_ref="S4.1 Lemma (Compatibility)",
        quote="pi_{n,m} . O_m = O_n . pi_{n,m}",
        claimed="commutes for all n <= m",
        computed=computed,
        status=Status(row.verdict),
        rerun=f"obsaudit compat --kind {L.kind.value} --n {L.n} --m {L.m}",
        note="truth-table lift; the scheme-level transition map is not determined on B_n",
    )


def derived_identity_holds(L: LiftMap) -> bool:
    """Check O_m(lift f) = lift(O_n f) + (gap mod 2) lift(f) on every atom."""
    lower, upper = Observer(L.n), Observer(L.m)
    for point in range(1 << L.n):
        f = atom(L.n, point)
        lifted = lift(L, f)
        expected = lift(L, lower.apply(f))
        if L.gap % 2:
            expected = expected ^ lifted
        if upper.apply(lifted) != expected:
            return False
    return True


@dataclass(frozen=True)
class SequenceFinding:
    """
    Whether the fixed space at level n survives one lift.

    Attributes:
        compatible_dimension: dimension of {f in fixed(n) : lift f in fixed(m)}
        nonconstant: whether that subspace holds a non-constant function
        all_ones_lifts: whether the all-ones function lifts to a fixed point
    """

    lift_kind: str
    n: int
    m: int
    fixed_dimension: int
    compatible_dimension: int
    nonconstant: bool
    all_ones_lifts: bool

    def as_row(self) -> List[str]:
        return [
            self.lift_kind,
            str(self.n),
            str(self.m),
            str(self.fixed_dimension),
            str(self.compatible_dimension),
            "yes" if self.nonconstant else "no",
            "yes" if self.all_ones_lifts else "no",
        ]


SEQUENCE_HEADER = [
    "lift_kind",
    "n",
    "m",
    "fixed_dim",
    "compatible_dim",
    "nonconstant",
    "all_ones_lifts",
]


def _compatible_subspace(L: LiftMap, basis: KernelBasis) -> Tuple[int, bool]:
    if basis.dimension == 0:
        return 0, False
    upper = Observer(L.m)
    tables = basis.tables(L.n)
    defects = []
    for t in tables:
        lifted = lift(L, t)
        defects.append(upper.apply(lifted) ^ lifted)
    combos = solve_left_combinations(defects)
    if combos.dimension == 0:
        return 0, False
    ones = TruthTable.ones(L.n)
    nonconstant = False
    for i in range(combos.dimension):
        row = combos.vectors.to_dense()[i]
        f = TruthTable.zeros(L.n)
        for j in np.flatnonzero(row).tolist():
            f = f ^ tables[j]
        if f != ones and not f.is_zero():
            nonconstant = True
            break
    return combos.dimension, nonconstant


def compatible_sequence(
    n_max: int, gaps: Tuple[int, ...] = (1, 2)
) -> List[SequenceFinding]:
    """
    Every (kind, n, n + gap) step with n + gap <= n_max.

    Raises:
        CapExceededError: If n_max exceeds the audit limit
    """
    if n_max > MAX_AUDIT_ARITY:
        raise CapExceededError(f"Sequence audit limited to n_max <= {MAX_AUDIT_ARITY}")
    spaces: Dict[int, KernelBasis] = {}

    def space(n: int) -> KernelBasis:
        if n not in spaces:
            spaces[n] = fixed_space(n)
        return spaces[n]

    findings = []
    for kind in LiftKind:
        for n in range(1, n_max):
            for gap in gaps:
                m = n + gap
                if m > n_max:
                    continue
                L = LiftMap(kind, n, m)
                basis = space(n)
                dim, nonconstant = _compatible_subspace(L, basis)
                ones = lift(L, TruthTable.ones(n))
                ones_ok = Observer(m).is_invariant(ones)
                findings.append(
                    SequenceFinding(
                        kind.value, n, m, basis.dimension, dim, nonconstant, ones_ok
                    )
                )
    return findings


def compatible_sequence_audit(n_max: int) -> AuditVerdict:
    """
    Audit the claim that the invariant predicates form a compatible system.

    The claim needs a non-constant fixed point at every level that lifts
    to the next one. Consecutive levels (gap 1) are tested for every n;
    gap-2 lifts are reported alongside because they are the only ones
    that commute with O.

    Example:
        >>> compatible_sequence_audit(3).status.value
        'REFUTED'
    """
    findings = compatible_sequence(n_max)
    consecutive = [f for f in findings if f.m == f.n + 1]
    broken = [f for f in consecutive if not f.nonconstant]
    even_gap = [f for f in findings if f.m == f.n + 2 and f.nonconstant]
    computed = "every consecutive lift carries a non-constant fixed point"
    if broken:
        computed = (
            f"{len(broken)} of {len(consecutive)} consecutive lifts carry "
            "no non-constant fixed point"
        )
    elif even_gap:
        levels = sorted({f"{f.n}->{f.m}" for f in even_gap})
        computed += "; gap-2 lifts carry them between " + ", ".join(levels)
    logger.debug("sequence audit up to n=%d: %d broken steps", n_max, len(broken))
    return AuditVerdict(
        claim_id="S6-compatible-system",
        paper_ref="S6 Proposition (inductive compatibility)",
        quote="The invariant predicates satisfy the compatibility",
        claimed="compatible non-constant A_n for all n",
        computed=computed,
        status=decide(not broken),
        rerun=f"obsaudit compat --sequence --n {n_max}",
        note="fixed space of O_n + I over GF(2); even levels have only the zero fixed point",
    )
