"""
Tests for F_2[t] arithmetic and the predicate L-series.

Test Coverage:
    - Irreducible enumeration, necklace counts, divisor identity
    - Characters, including the unset sign rule
    - Euler products against Dirichlet series
    - Local factors on Krylov spaces
"""

from fractions import Fraction
from unittest.mock import patch

import pytest

from obsaudit.boolfun import TruthTable, atom
from obsaudit.exceptions import ValidationError
from obsaudit.lfunction import (
    MonicPoly2,
    character,
    check_norm,
    compare_series,
    degree_identity_holds,
    dirichlet_series,
    euler_product,
    evaluate_local_factor,
    hecke_character,
    irreducibles,
    is_irreducible,
    local_factor,
    mobius,
    necklace_count,
)
from obsaudit.observer import Observer


class TestIrreducibles:
    """
    Test cases for the irreducible sieve.

    The sieve is checked against trial division and the necklace formula.
    """

    def test_low_degrees(self):
        """Test the documented lists."""
        assert [str(p) for p in irreducibles(1)] == ["t", "t + 1"]
        assert [str(p) for p in irreducibles(2)] == ["t^2 + t + 1"]
        assert [p.mask for p in irreducibles(3)] == [0b1011, 0b1101]

    @pytest.mark.parametrize("d", range(1, 13))
    def test_counts_match_necklace_formula(self, d):
        """Test I(d) against (1/d) sum mu(e) 2^(d/e)."""
        assert len(irreducibles(d)) == necklace_count(d)
        assert degree_identity_holds(d)

    def test_trial_division_agrees(self):
        """Test the sieve against trial division for every monic of degree 6."""
        sieve = {p.mask for p in irreducibles(6)}
        trial = {m for m in range(1 << 6, 1 << 7) if is_irreducible(MonicPoly2(m))}

        assert sieve == trial

    def test_known_counts(self):
        """Test a few published values."""
        assert necklace_count(4) == 3
        assert necklace_count(8) == 30
        assert necklace_count(12) == 335

    def test_mobius(self):
        """Test the Moebius function."""
        assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_degree_range(self):
        """Test the degree limits."""
        with pytest.raises(ValidationError):
            irreducibles(0)
        with pytest.raises(ValidationError):
            irreducibles(21)
        with pytest.raises(ValidationError):
            necklace_count(0)

    def test_monic_poly(self):
        """Test degree and norm."""
        p = MonicPoly2(0b1011)

        assert p.degree == 3
        assert p.norm == 8
        assert str(p) == "t^3 + t + 1"
        with pytest.raises(ValidationError):
            MonicPoly2(0)

    def test_constant_is_not_irreducible(self):
        """Test that degree 0 is excluded."""
        assert not is_irreducible(MonicPoly2(1))


class TestCharacters:
    """Test cases for character lookup."""

    def test_delta(self):
        """Test chi_Delta is 1 exactly on odd-square degrees."""
        chi = character("delta")

        assert chi(MonicPoly2(0b10)) == 1
        assert chi(MonicPoly2(0b111)) == 0
        assert chi(MonicPoly2(1 << 9)) == 1
        assert chi(MonicPoly2(1)) == 0

    def test_hecke_rule_unset(self):
        """Test that the sign character needs a residue rule."""
        with pytest.raises(ValidationError, match="no residue rule"):
            character("hecke")

    def test_hecke_with_rule(self):
        """Test the sign character with a caller-supplied residue."""
        chi = hecke_character(lambda f: f.mask)

        assert chi(MonicPoly2(0b101)) == 1
        assert chi(MonicPoly2(0b11)) == -1
        assert chi(MonicPoly2(0b10)) == 0

    def test_unknown(self):
        """Test unknown names."""
        with pytest.raises(ValidationError, match="Unknown character"):
            character("psi")


class TestSeries:
    """
    Test cases for Euler products and Dirichlet series.

    Both are power series in u = 2^{-s} with exact coefficients.
    """

    def test_trivial_character(self):
        """Test the documented example: 1 / (1 - 2u)."""
        assert euler_product(character("one"), 3).coefficients_as_strings() == [
            "1",
            "2",
            "4",
            "8",
        ]

    def test_trivial_character_agrees(self):
        """Test the zeta function of F_2[t] to degree 12."""
        assert all(row.equal for row in compare_series(character("one"), 12))

    def test_delta_degree_one(self):
        """Test the documented degree-1 truncations."""
        delta = character("delta")

        assert euler_product(delta, 1).coefficients_as_strings() == ["1", "2"]
        assert dirichlet_series(delta, 1).coefficients_as_strings() == ["1", "2"]

    def test_delta_diverges_at_degree_two(self):
        """Test that chi_Delta is not multiplicative: 3 against 0 at u^2."""
        rows = compare_series(character("delta"), 12)
        first = next(r for r in rows if not r.equal)

        assert first.degree == 2
        assert first.euler == Fraction(3)
        assert first.dirichlet == Fraction(0)
        assert first.as_row() == ["2", "3", "0", "false"]

    def test_zero_character(self):
        """Test that the zero character gives the constant series."""
        assert euler_product(character("zero"), 4).coefficients_as_strings() == [
            "1",
            "0",
            "0",
            "0",
            "0",
        ]

    def test_degree_limit(self):
        """Test the truncation order limits."""
        with pytest.raises(ValidationError):
            euler_product(character("one"), 17)
        with pytest.raises(ValidationError):
            dirichlet_series(character("one"), -1)

    def test_evaluate(self):
        """Test numeric evaluation at s = 1."""
        value = euler_product(character("one"), 1).evaluate(1)

        assert value == pytest.approx(2.0)


class TestLocalFactor:
    """Test cases for det(I - u A) on the Krylov space."""

    def test_documented_example(self):
        """Test the all-ones atom at n = 3."""
        factor = local_factor(Observer(3), atom(3, 7))

        assert factor.format("u", ascending=True) == "1 - u^2"
        assert factor.to_list() == [1, 0, -1]

    def test_fixed_point(self):
        """Test a fixed seed: 1 - u."""
        factor = local_factor(Observer(3), TruthTable.ones(3))

        assert factor.format("u", ascending=True) == "1 - u"

    def test_evaluate(self):
        """Test L_v at q = 2, s = 1: 1 / (1 - 1/4)."""
        factor = local_factor(Observer(3), atom(3, 7))

        assert evaluate_local_factor(factor, 2, 1) == pytest.approx(4 / 3)

    def test_invalid_q(self):
        """Test that q must be at least 2."""
        factor = local_factor(Observer(3), atom(3, 7))

        with pytest.raises(ValidationError):
            evaluate_local_factor(factor, 1, 1)

    def test_zero_predicate(self):
        """Test that the zero predicate has no Krylov space."""
        with pytest.raises(ValidationError):
            local_factor(Observer(3), TruthTable.zeros(3))

    def test_norm_does_not_change_factor(self):
        """Test that the polynomial in u is the same for every norm q."""
        o = Observer(3)

        assert local_factor(o, atom(3, 7), q=4) == local_factor(o, atom(3, 7))

    @pytest.mark.parametrize("q", [0, 1, 6, 12, -3])
    def test_norm_must_be_prime_power(self, q):
        """Test that the norm of a place is a prime power."""
        with pytest.raises(ValidationError, match="prime power"):
            local_factor(Observer(3), atom(3, 7), q=q)

    @pytest.mark.parametrize("q", [2, 3, 4, 8, 9, 25])
    def test_prime_power_norms(self, q):
        """Test norms accepted by both local_factor and its evaluation."""
        check_norm(q)
        factor = local_factor(Observer(3), atom(3, 7), q=q)

        assert evaluate_local_factor(factor, q, 1) == pytest.approx(1 / (1 - q**-2))

    def test_inconsistent_lift_rejected(self):
        """Test that a lift not reducing to the Krylov relation is an error."""
        with patch(
            "obsaudit.lfunction.restriction_charpoly_consistent", return_value=False
        ):
            with pytest.raises(ValidationError, match="does not reduce"):
                local_factor(Observer(3), atom(3, 7))
