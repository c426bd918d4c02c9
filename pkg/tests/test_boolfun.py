"""
Tests for truth tables, algebraic normal forms and Walsh transforms.

Test Coverage:
    - TruthTable construction, packing and validation
    - Lattice and GF(2) operations
    - Moebius transform between tables and ANF
    - The explicit predicate families
    - Walsh-Hadamard transform under both lifts
"""

import numpy as np
import pytest

from obsaudit.boolfun import (
    AnfPoly,
    TruthTable,
    WalshLift,
    anf_of,
    atom,
    check_arity,
    inverse_walsh,
    predicate_family,
    table_of,
    walsh,
    word_count,
)
from obsaudit.config import RunConfig, configure_limits
from obsaudit.exceptions import CapExceededError, ValidationError


class TestTruthTable:
    """
    Test cases for the packed TruthTable.

    These tests verify packing conventions (point x at bit x, x_1 as the
    least significant coordinate), validation and the bitwise algebra.
    """

    def test_from_bits_and_hex(self):
        """Test the documented packing example."""
        t = TruthTable.from_bits(2, [0, 1, 1, 1])

        assert t.to_hex() == "e"
        assert t.weight() == 3
        assert t.support() == [1, 2, 3]
        assert t[0] == 0 and t[3] == 1

    def test_hex_is_zero_padded(self):
        """Test that hex output has one digit per four points."""
        assert TruthTable.zeros(4).to_hex() == "0000"
        assert TruthTable.ones(1).to_hex() == "3"

    def test_from_hex(self):
        """Test parsing a multi-word table from hexadecimal."""
        t = TruthTable.from_hex(7, "1" + "0" * 31)

        assert t.support() == [124]
        assert t.words.shape == (word_count(7),)

    def test_invalid_hex(self):
        """Test that non-hex input raises ValidationError."""
        with pytest.raises(ValidationError, match="Invalid hexadecimal"):
            TruthTable.from_hex(2, "xyz")

    def test_value_too_large(self):
        """Test that values wider than 2^n bits are rejected."""
        with pytest.raises(ValidationError):
            TruthTable.from_int(2, 1 << 4)

    def test_bits_beyond_table(self):
        """Test that stray bits above 2^n are rejected for small arities."""
        with pytest.raises(ValidationError, match="beyond"):
            TruthTable(2, np.array([0x10], dtype=np.uint64))

    def test_wrong_bit_count(self):
        """Test that from_bits checks the length."""
        with pytest.raises(ValidationError):
            TruthTable.from_bits(3, [0, 1])

    def test_arity_checks(self):
        """Test arity validation against the configured cap."""
        with pytest.raises(ValidationError):
            check_arity(0)
        with pytest.raises(CapExceededError):
            check_arity(29)

        configure_limits(RunConfig(arity_cap=8, dense_cap=8))
        with pytest.raises(CapExceededError):
            TruthTable.zeros(9)

    def test_operations(self):
        """Test XOR, AND, OR and complement."""
        a = TruthTable.from_bits(2, [0, 1, 0, 1])
        b = TruthTable.from_bits(2, [0, 0, 1, 1])

        assert (a ^ b).bits().tolist() == [0, 1, 1, 0]
        assert (a & b).bits().tolist() == [0, 0, 0, 1]
        assert (a | b).bits().tolist() == [0, 1, 1, 1]
        assert (~a).bits().tolist() == [1, 0, 1, 0]

    def test_arity_mismatch(self):
        """Test that combining tables of different arity fails."""
        with pytest.raises(ValidationError, match="Arity mismatch"):
            TruthTable.zeros(2) ^ TruthTable.zeros(3)

    def test_constant_checks(self):
        """Test is_zero and is_constant."""
        assert TruthTable.zeros(7).is_zero()
        assert TruthTable.ones(7).is_constant()
        assert not atom(7, 5).is_constant()

    def test_equality_and_hash(self):
        """Test value semantics."""
        a = TruthTable.from_bits(2, [1, 0, 0, 1])
        b = TruthTable.from_hex(2, "9")

        assert a == b
        assert len({a, b}) == 1
        assert a != TruthTable.from_hex(3, "09")

    def test_immutable_words(self):
        """Test that the packed words are read-only."""
        t = TruthTable.zeros(3)
        with pytest.raises(ValueError):
            t.words[0] = 1

    def test_random_is_seeded(self, rng):
        """Test that random tables follow the generator."""
        a = TruthTable.random(9, np.random.default_rng(3))
        b = TruthTable.random(9, np.random.default_rng(3))

        assert a == b
        assert TruthTable.random(3, rng).weight() <= 8

    def test_point_out_of_range(self):
        """Test indexing outside the cube."""
        with pytest.raises(ValidationError):
            TruthTable.zeros(2)[4]


class TestAtoms:
    """Test cases for atom indicators."""

    def test_atom_small(self):
        """Test a single-word atom."""
        assert atom(3, 0b111).support() == [7]
        assert atom(1, 0).bits().tolist() == [1, 0]

    def test_atom_multiword(self):
        """Test an atom in the second word."""
        t = atom(7, 100)

        assert t[100] == 1
        assert t.weight() == 1

    def test_atom_out_of_range(self):
        """Test that points beyond 2^n are rejected."""
        with pytest.raises(ValidationError):
            atom(3, 8)


class TestAnf:
    """
    Test cases for the algebraic normal form.

    The Moebius transform is its own inverse over GF(2), so a table
    survives the trip through its ANF.
    """

    def test_anf_of_atom(self):
        """Test the ANF of the all-ones atom is the top monomial."""
        assert anf_of(atom(3, 0b111)).monomials == (7,)

    def test_anf_of_origin_atom(self):
        """Test that 1 + x1 is the indicator of x1 = 0."""
        assert anf_of(atom(1, 0)).monomials == (0, 1)

    def test_table_of(self):
        """Test evaluating x1 + x2 + x1*x2."""
        assert table_of(AnfPoly.of(2, [1, 2, 3])).bits().tolist() == [0, 1, 1, 1]

    def test_random_table_through_anf(self, rng):
        """Test that the ANF reproduces a random table."""
        t = TruthTable.random(8, rng)

        assert table_of(anf_of(t)) == t

    def test_str(self):
        """Test the printed form."""
        assert str(AnfPoly.of(3, [0, 3, 4])) == "1 + x1*x2 + x3"
        assert str(AnfPoly.of(3, [])) == "0"

    def test_repeated_monomials_cancel(self):
        """Test that AnfPoly.of reduces mod 2."""
        assert AnfPoly.of(2, [1, 1, 2]).monomials == (2,)

    def test_unsorted_rejected(self):
        """Test that the direct constructor requires canonical form."""
        with pytest.raises(ValidationError, match="sorted"):
            AnfPoly(2, (2, 1))

    def test_mask_out_of_range(self):
        """Test that monomials must use existing variables."""
        with pytest.raises(ValidationError):
            AnfPoly(2, (4,))

    def test_degree(self):
        """Test the degree of a polynomial."""
        assert AnfPoly.of(3, [1, 6]).degree == 2
        assert AnfPoly.of(3, []).degree == -1

    def test_xor(self):
        """Test adding two forms."""
        total = AnfPoly.of(2, [1, 2]) ^ AnfPoly.of(2, [2, 3])

        assert total.monomials == (1, 3)


class TestPredicateFamilies:
    """Test cases for the explicit predicate formulas."""

    def test_pi1(self):
        """Test pi1 keeps monomials of size 1 and 2 mod 4."""
        assert predicate_family("pi1", 2).monomials == (1, 2, 3)
        assert 7 not in predicate_family("pi1", 3).monomials

    def test_pi1_size_five(self):
        """Test that size-5 monomials (1 mod 4) are included."""
        assert 0b11111 in predicate_family("pi1", 5).monomials

    def test_delta(self):
        """Test delta picks out odd-square coordinates."""
        assert predicate_family("delta", 3).monomials == (1,)
        assert predicate_family("delta", 9).monomials == (1, 256)

    def test_pi2_is_even_weight_indicator(self):
        """Test pi2 equals the indicator of even-weight points."""
        even = TruthTable.from_function(4, lambda x: bin(x).count("1") % 2 == 0)

        assert table_of(predicate_family("pi2", 4)) == even
        assert predicate_family("pi2", 2).monomials == (0, 1, 2)

    def test_unknown_family(self):
        """Test that unknown names raise ValidationError."""
        with pytest.raises(ValidationError, match="Unknown predicate family"):
            predicate_family("pi3", 3)


class TestWalsh:
    """Test cases for the Walsh-Hadamard transform."""

    def test_constant(self):
        """Test the documented example."""
        assert walsh(TruthTable.ones(2)).coefficients.tolist() == [4, 0, 0, 0]

    def test_plus_minus_lift(self):
        """Test the +-1 lift of the constants."""
        zeros = walsh(TruthTable.zeros(2), WalshLift.PLUS_MINUS)
        ones = walsh(TruthTable.ones(2), WalshLift.PLUS_MINUS)

        assert zeros.coefficients.tolist() == [4, 0, 0, 0]
        assert ones.coefficients.tolist() == [-4, 0, 0, 0]

    def test_linear_function(self):
        """Test that x1 has weight on the empty set and on {1} only."""
        x1 = TruthTable.from_bits(2, [0, 1, 0, 1])
        spectrum = walsh(x1)

        assert spectrum[0] == 2
        assert spectrum[1] == -2
        assert spectrum[2] == 0 and spectrum[3] == 0

    def test_inverse(self, rng):
        """Test that applying the transform twice scales by 2^n."""
        t = TruthTable.random(5, rng)
        back = inverse_walsh(walsh(t))

        assert back.tolist() == (32 * t.bits().astype(np.int64)).tolist()
