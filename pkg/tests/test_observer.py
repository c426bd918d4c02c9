"""
Tests for the observation operator.

Test Coverage:
    - Word-level application against the per-point definition
    - O^2 = n I over GF(2)
    - Atom labels and the printed basis order
    - Dense matrices and the dense cap
    - Orbit cycle detection
    - Benchmark helper
"""

import pytest

from obsaudit.boolfun import TruthTable, atom
from obsaudit.claims import PRINTED_ATOM_IMAGES, PRINTED_M
from obsaudit.config import RunConfig, configure_limits
from obsaudit.exceptions import CapExceededError, ValidationError
from obsaudit.observer import (
    AtomOrder,
    Observer,
    atom_label,
    benchmark_apply,
    order_points,
    printed_point,
    reverse_bits,
    translate,
)


class TestApply:
    """
    Test cases for Observer.apply.

    The word-level path uses masked shifts inside a word and block swaps
    across words, so arities on both sides of n = 6 are covered.
    """

    def test_documented_example(self):
        """Test O_3 on the all-ones atom."""
        assert Observer(3).apply(atom(3, 0b111)).support() == [3, 5, 6]

    @pytest.mark.parametrize("n", [1, 2, 5, 6, 7, 9])
    def test_matches_naive(self, n, rng):
        """Test the word-level application against the per-point loop."""
        o = Observer(n)
        f = TruthTable.random(n, rng)

        assert o.apply(f) == o.naive_apply(f)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_square_is_n_times_identity(self, n, rng):
        """Test O^2 = I for odd n and O^2 = 0 for even n."""
        o = Observer(n)
        f = TruthTable.random(n, rng)
        expected = f if n % 2 else TruthTable.zeros(n)

        assert o.apply_power(f, 2) == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_square_law_exhaustive(self, n):
        """Test O^2 = n I on every table of arity n <= 3."""
        o = Observer(n)
        for value in range(1 << (1 << n)):
            f = TruthTable.from_int(n, value)
            expected = f if n % 2 else TruthTable.zeros(n)

            assert o.apply(o.apply(f)) == expected

    @pytest.mark.parametrize("n", range(4, 17))
    def test_square_law_random(self, n, rng):
        """Test O^2 = n I on 1000 random tables for each 4 <= n <= 16."""
        o = Observer(n)
        zero = TruthTable.zeros(n)
        for _ in range(1000):
            f = TruthTable.random(n, rng)

            assert o.apply(o.apply(f)) == (f if n % 2 else zero)

    def test_arity_mismatch(self):
        """Test applying O_3 to a table of arity 2."""
        with pytest.raises(ValidationError, match="applied to arity 2"):
            Observer(3).apply(TruthTable.zeros(2))

    def test_negative_power(self):
        """Test that negative powers are rejected."""
        with pytest.raises(ValidationError):
            Observer(2).apply_power(TruthTable.zeros(2), -1)

    def test_is_invariant(self):
        """Test the constant 1 is fixed at odd levels only."""
        assert Observer(3).is_invariant(TruthTable.ones(3))
        assert not Observer(4).is_invariant(TruthTable.ones(4))
        assert Observer(4).is_invariant(TruthTable.zeros(4))

    def test_linear_function_is_not_invariant(self):
        """Test O(x1) = n x1 + 1, which never equals x1 at odd n."""
        x1 = TruthTable.from_function(3, lambda x: x & 1)

        assert Observer(3).apply(x1) == ~x1

    def test_translate(self):
        """Test the group translation x -> f(x + v)."""
        assert translate(atom(3, 0), 5) == atom(3, 5)
        with pytest.raises(ValidationError):
            translate(atom(3, 0), 8)


class TestAtomLabels:
    """
    Test cases for the printed atom order.

    Atoms are listed with x_1 leading and in descending order, so p_1 is
    the all-ones point and p_{2^n} the origin.
    """

    def test_reverse_bits(self):
        """Test reading a mask in the opposite coordinate order."""
        assert reverse_bits(0b110, 3) == 0b011
        assert reverse_bits(1, 4) == 8

    def test_printed_points(self):
        """Test the first and last atoms at n = 3."""
        assert printed_point(3, 1) == 7
        assert printed_point(3, 2) == 3
        assert printed_point(3, 4) == 1
        assert printed_point(3, 8) == 0

    def test_out_of_range(self):
        """Test indices outside 1..2^n."""
        with pytest.raises(ValidationError):
            printed_point(3, 0)
        with pytest.raises(ValidationError):
            printed_point(3, 9)

    def test_label_inverts_index(self):
        """Test atom_label(printed_point(i)) = p_i at n = 4."""
        for i in range(1, 17):
            assert atom_label(4, printed_point(4, i)) == f"p{i}"

    def test_order_is_permutation(self):
        """Test that both orders list every point once."""
        assert sorted(order_points(5, AtomOrder.PRINTED)) == list(range(32))
        assert order_points(2, AtomOrder.ASCENDING) == [0, 1, 2, 3]

    def test_printed_atom_images(self):
        """Test that O_3 sends each p_i to the three listed atoms."""
        o3 = Observer(3)
        for i, printed in PRINTED_ATOM_IMAGES.items():
            image = o3.atom_image(printed_point(3, i))
            labels = sorted(int(atom_label(3, p)[1:]) for p in image.support())
            assert tuple(labels) == printed


class TestMatrix:
    """Test cases for the dense matrix of O_n."""

    def test_printed_matrix_n3(self):
        """Test the n = 3 matrix in printed order row by row."""
        rows = Observer(3).matrix(AtomOrder.PRINTED).to_lists()

        assert ["".join(map(str, r)) for r in rows] == list(PRINTED_M)

    def test_symmetric_with_n_ones_per_row(self):
        """Test that the matrix is the hypercube adjacency matrix."""
        dense = Observer(4).matrix(AtomOrder.ASCENDING).to_dense()

        assert (dense == dense.T).all()
        assert dense.sum(axis=1).tolist() == [4] * 16

    def test_order_does_not_change_matrix(self):
        """Test that O commutes with the coordinate reversal."""
        printed = Observer(3).matrix(AtomOrder.PRINTED).to_dense()
        points = order_points(3, AtomOrder.PRINTED)
        ascending = Observer(3).matrix(AtomOrder.ASCENDING).to_dense()

        assert (printed == ascending[points][:, points]).all()

    def test_dense_cap(self):
        """Test that the matrix honours the configured dense cap."""
        configure_limits(RunConfig(dense_cap=4))

        with pytest.raises(CapExceededError, match="cap 2\\^4"):
            Observer(5).matrix()


class TestOrbit:
    """Test cases for Brent cycle detection."""

    def test_atom_period_two(self):
        """Test that O_3 swaps p_1 and its image."""
        report = Observer(3).orbit(atom(3, 7))

        assert report.period == 2
        assert report.preperiod == 0
        assert report.orbit_size == 2

    def test_fixed_point(self):
        """Test the constant 1 at n = 3 has period 1."""
        report = Observer(3).orbit(TruthTable.ones(3))

        assert report.period == 1
        assert report.orbit_size == 1

    def test_even_level_reaches_zero(self):
        """Test that even levels are nilpotent: f -> O f -> 0."""
        report = Observer(2).orbit(atom(2, 0))

        assert report.period == 1
        assert report.preperiod == 2
        assert report.orbit_size == 3

    def test_step_budget(self):
        """Test that an exhausted budget reports no period."""
        report = Observer(3).orbit(atom(3, 7), max_steps=1)

        assert report.period is None

    def test_invalid_budget(self):
        """Test max_steps below 1."""
        with pytest.raises(ValidationError):
            Observer(3).orbit(atom(3, 7), max_steps=0)


class TestBenchmark:
    """Test cases for benchmark_apply."""

    def test_benchmark(self):
        """Test that both paths run and the timings are positive."""
        result = benchmark_apply(8, repeats=2, seed=1)

        assert result.n == 8
        assert result.word_seconds > 0
        assert result.naive_seconds > 0
        assert result.speedup > 0

    @pytest.mark.slow
    def test_word_level_target_n20(self):
        """Test one application at n = 20 under 50 ms and at least 10x the loop."""
        result = benchmark_apply(20, repeats=5, seed=3)

        assert result.word_seconds < 0.05
        assert result.speedup >= 10

    def test_without_naive(self):
        """Test skipping the per-point loop."""
        result = benchmark_apply(6, repeats=1, naive=False)

        assert result.naive_seconds != result.naive_seconds  # NaN
