"""
Tests for the exact spectrum of O_n.

Test Coverage:
    - Character formula for both integer lifts
    - Trace and second-moment identities
    - Dense cross-check range and caps
    - Spectral verdicts
"""

import math

import pytest

from obsaudit.boolfun import WalshLift
from obsaudit.exceptions import CapExceededError
from obsaudit.spectral import character_pairs, spectral_audit, spectrum


class TestSpectrum:
    """
    Test cases for spectrum().

    The zero_one lift is the hypercube adjacency matrix with eigenvalues
    n - 2k of multiplicity C(n, k).
    """

    def test_documented_example(self):
        """Test the n = 3 spectrum."""
        report = spectrum(3)

        assert report.pairs == ((3, 1), (1, 3), (-1, 3), (-3, 1))
        assert report.dim_E1 == 3
        assert report.spectral_radius == 3

    def test_binomial_multiplicities(self):
        """Test multiplicities C(n, k) at n = 10."""
        report = spectrum(10)

        for k in range(11):
            assert report.multiplicity(10 - 2 * k) == math.comb(10, k)
        assert report.multiplicity(1) == 0

    def test_plus_minus_lift(self):
        """Test J - 2A at n = 2."""
        report = spectrum(2, WalshLift.PLUS_MINUS)

        assert report.pairs == ((4, 1), (0, 3))
        assert report.lift is WalshLift.PLUS_MINUS

    def test_lift_from_string(self):
        """Test that the lift accepts its value."""
        assert spectrum(2, "plus_minus").lift is WalshLift.PLUS_MINUS

    @pytest.mark.parametrize("lift", list(WalshLift))
    @pytest.mark.parametrize("n", [1, 4, 7, 12])
    def test_moments(self, n, lift):
        """Test size, trace and second moment against the matrix."""
        report = spectrum(n, lift)

        assert report.moments() == report.expected_moments()

    def test_eigenvalue_list(self):
        """Test the expanded multiset."""
        assert spectrum(2).eigenvalues() == [2, 0, 0, -2]

    def test_dense_check_range(self):
        """Test that the floating-point check only runs for small n."""
        assert spectrum(6).dense_max_error is not None
        assert spectrum(6).dense_max_error < 1e-9
        assert spectrum(7).dense_max_error is None

    def test_character_pairs(self):
        """Test the formula without the cross-checks."""
        assert character_pairs(1) == {1: 1, -1: 1}

    @pytest.mark.parametrize("n", [0, 25])
    def test_caps(self, n):
        """Test the arity range."""
        with pytest.raises(CapExceededError):
            spectrum(n)

    @pytest.mark.slow
    def test_large_level(self):
        """Test n = 24 by the character formula alone."""
        report = spectrum(24)

        assert report.multiplicity(0) == math.comb(24, 12)

    def test_to_dict(self):
        """Test the serialized form."""
        data = spectrum(1).to_dict()

        assert data["pairs"] == [[1, 1], [-1, 1]]
        assert data["lift"] == "zero_one"
        assert data["bound_checks"] == [{"eigenvalue": -1, "k": 1, "holds": False}]


class TestSpectralAudit:
    """Test cases for the spectral verdicts."""

    def test_documented_example(self):
        """Test the four verdicts at n = 3."""
        verdicts = spectral_audit(3)

        assert [v.status.value for v in verdicts] == [
            "CONFIRMED",
            "REFUTED",
            "REFUTED",
            "REFUTED",
        ]
        assert verdicts[2].computed == "3"
        assert verdicts[3].computed == "rho = 3"

    def test_n1_radius_within_bound(self):
        """Test that rho = 1 meets sqrt(1)."""
        radius = spectral_audit(1)[3]

        assert radius.status.value == "CONFIRMED"

    def test_rerun_commands(self):
        """Test that re-run commands carry the lift."""
        assert spectral_audit(2)[0].rerun == "obsaudit spectrum --n 2"
        assert (
            spectral_audit(2, WalshLift.PLUS_MINUS)[0].rerun
            == "obsaudit spectrum --n 2 --lift plus_minus"
        )

    def test_no_level_has_two_dimensional_e1(self):
        """Test that no level has a two-dimensional eigenspace for 1."""
        for n in range(1, 9):
            assert spectrum(n).dim_E1 != 2
