"""
Tests for the discrete action and its Metropolis sampler.

Test Coverage:
    - Metrics and neighbour masks
    - Exact energies and single-flip updates
    - The acceptance rule
    - Ground states and detailed balance by enumeration
    - Chain determinism and trace consistency
    - Convergence to the Boltzmann distribution (slow)
"""

from fractions import Fraction

import pytest

from obsaudit import cftsim
from obsaudit.boolfun import TruthTable, atom
from obsaudit.cftsim import (
    CftParams,
    Metric,
    SpinConfig,
    detailed_balance_holds,
    distance,
    energy,
    exact_distribution,
    flip_delta,
    ground_states,
    log_acceptance,
    metropolis,
    neighbour_masks,
    total_variation,
)
from obsaudit.exceptions import CapExceededError, ValidationError


class TestMetric:
    """Test cases for distances and neighbours."""

    def test_ultrametric(self):
        """Test d(x, y) is the bit length of x ^ y."""
        assert distance(0, 1) == 1
        assert distance(0, 4) == 3
        assert distance(5, 5) == 0
        assert neighbour_masks(3) == (1,)

    def test_hamming(self):
        """Test the Hamming alternative."""
        assert distance(0, 5, Metric.HAMMING) == 2
        assert neighbour_masks(3, "hamming") == (1, 2, 4)


class TestEnergy:
    """
    Test cases for S[phi].

    The kinetic term counts ordered neighbour pairs with weight 1/2 each,
    so every unordered pair of ones costs 1.
    """

    def test_documented_example(self):
        """Test the all-ones configuration at n = 2."""
        ones = TruthTable.ones(2)

        assert energy(SpinConfig(ones), CftParams(2, 5, 1, ones)) == Fraction(2)

    def test_potential_term(self):
        """Test that each mismatch with A costs lambda."""
        p = CftParams(2, Fraction(3, 2), 1, TruthTable.ones(2))

        assert energy(SpinConfig(TruthTable.zeros(2)), p) == 6

    def test_hamming_energy(self):
        """Test that the Hamming metric counts every edge of the square."""
        ones = TruthTable.ones(2)
        p = CftParams(2, 0, 1, ones, metric=Metric.HAMMING)

        assert energy(SpinConfig(ones), p) == 4

    @pytest.mark.parametrize("metric", list(Metric))
    def test_flip_delta(self, metric, rng):
        """Test the local update against two full evaluations."""
        ref = TruthTable.random(3, rng)
        p = CftParams(3, Fraction(7, 4), 1, ref, metric=metric)
        cfg = SpinConfig(TruthTable.random(3, rng))

        for site in range(8):
            expected = energy(cfg.flipped(site), p) - energy(cfg, p)
            assert flip_delta(cfg, p, site) == expected

    @pytest.mark.parametrize("metric", list(Metric))
    def test_flip_delta_random_flips(self, metric, rng):
        """Test the local update on 1000 random flips across arities."""
        for _ in range(1000):
            n = int(rng.integers(1, 7))
            lam = Fraction(int(rng.integers(0, 9)), 4)
            p = CftParams(n, lam, 1, TruthTable.random(n, rng), metric=metric)
            cfg = SpinConfig(TruthTable.random(n, rng))
            site = int(rng.integers(0, 1 << n))

            expected = energy(cfg.flipped(site), p) - energy(cfg, p)
            assert flip_delta(cfg, p, site) == expected

    def test_flip_site_range(self):
        """Test sites outside the cube."""
        p = CftParams(2, 1, 1, TruthTable.zeros(2))

        with pytest.raises(ValidationError):
            flip_delta(SpinConfig(TruthTable.zeros(2)), p, 4)

    def test_arity_mismatch(self):
        """Test a configuration of the wrong arity."""
        p = CftParams(2, 1, 1, TruthTable.zeros(2))

        with pytest.raises(ValidationError):
            energy(SpinConfig(TruthTable.zeros(3)), p)


class TestAcceptance:
    """Test cases for the Metropolis acceptance rule."""

    def test_downhill_always_accepted(self):
        """Test that a non-positive change has log-acceptance 0."""
        assert log_acceptance(Fraction(-2), Fraction(5)) == 0
        assert log_acceptance(Fraction(0), Fraction(5)) == 0

    def test_uphill_weight(self):
        """Test that an increase dS is accepted with exp(-beta dS)."""
        assert log_acceptance(Fraction(3), Fraction(1, 2)) == Fraction(-3, 2)
        assert log_acceptance(2.0, 0.25) == pytest.approx(-0.5)


class TestParams:
    """Test cases for parameter validation."""

    def test_coerces_to_fractions(self):
        """Test that floats become exact fractions."""
        p = CftParams(1, 0.5, "2", TruthTable.zeros(1))

        assert p.lam == Fraction(1, 2)
        assert p.beta == Fraction(2)
        assert p.metric is Metric.ULTRAMETRIC

    @pytest.mark.parametrize("lam", [-1, "nan", "abc"])
    def test_invalid_lambda(self, lam):
        """Test negative and non-numeric couplings."""
        with pytest.raises(ValidationError):
            CftParams(1, lam, 1, TruthTable.zeros(1))

    def test_reference_arity(self):
        """Test a reference of the wrong arity."""
        with pytest.raises(ValidationError, match="does not match"):
            CftParams(2, 1, 1, TruthTable.zeros(3))


class TestEnumeration:
    """Test cases for the exhaustive checks at n <= 3."""

    def test_strong_potential_pins_reference(self):
        """Test that a large lambda makes A the unique ground state."""
        ones = TruthTable.ones(2)

        low, states = ground_states(CftParams(2, 10, 1, ones))

        assert low == 2
        assert states == [SpinConfig(ones)]

    def test_free_ground_states(self):
        """Test lambda = 0: no neighbouring pair of ones, 3 x 3 states."""
        low, states = ground_states(CftParams(2, 0, 1, TruthTable.zeros(2)))

        assert low == 0
        assert len(states) == 9

    def test_exact_distribution(self):
        """Test that the Boltzmann weights are normalised."""
        dist = exact_distribution(CftParams(2, 1, 1, atom(2, 3)))

        assert len(dist) == 16
        assert sum(dist.values()) == pytest.approx(1.0)

    @pytest.mark.parametrize("metric", list(Metric))
    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("lam, beta", [(2, 1), (Fraction(1, 3), Fraction(7, 2))])
    def test_detailed_balance(self, n, lam, beta, metric):
        """Test detailed balance over every single-flip pair for n <= 3."""
        p = CftParams(n, lam, beta, atom(n, (1 << n) - 1), metric=metric)

        assert detailed_balance_holds(p)

    def test_detailed_balance_rejects_always_accept(self):
        """Test that accepting every flip breaks balance when beta > 0."""
        p = CftParams(2, 1, 1, atom(2, 1))

        assert not detailed_balance_holds(p, rule=lambda delta, beta: Fraction(0))

    def test_detailed_balance_rejects_symmetric_rule(self):
        """Test a rule that penalises both directions of a flip equally."""
        p = CftParams(3, 2, 1, atom(3, 5))

        def symmetric(delta, beta):
            return -beta * abs(delta)

        assert not detailed_balance_holds(p, rule=symmetric)

    def test_detailed_balance_uses_energy(self, monkeypatch):
        """Test that an energy inconsistent with the flip update is caught."""
        p = CftParams(2, 1, 1, atom(2, 1))
        monkeypatch.setattr(
            cftsim, "energy", lambda cfg, params: Fraction(cfg.phi.to_int() % 7)
        )

        assert not detailed_balance_holds(p)

    def test_detailed_balance_infinite_temperature(self):
        """Test that beta = 0 is balanced under any rule."""
        p = CftParams(2, 1, 0, atom(2, 1))

        assert detailed_balance_holds(p, rule=lambda delta, beta: Fraction(0))

    def test_enumeration_cap(self):
        """Test the exhaustive limit."""
        with pytest.raises(CapExceededError):
            ground_states(CftParams(4, 1, 1, TruthTable.zeros(4)))


class TestMetropolis:
    """Test cases for the sampler."""

    def test_deterministic(self):
        """Test that equal parameters give equal chains."""
        p = CftParams(3, 1, 1, atom(3, 7), seed=11)

        first = metropolis(p, 2000)
        second = metropolis(p, 2000)

        assert first.trace == second.trace
        assert first.final == second.final
        assert first.accepted == second.accepted

    def test_trace_matches_final_energy(self):
        """Test the incremental energy against a full evaluation."""
        p = CftParams(3, Fraction(3, 2), 2, atom(3, 1), seed=4)

        result = metropolis(p, 500, record_every=50)

        assert len(result.trace) == 11
        assert result.trace[-1].step == 500
        assert result.trace[-1].energy == energy(result.final, p)

    def test_initial_overlap(self):
        """Test that starting at A gives overlap 1."""
        ref = atom(3, 2)
        p = CftParams(3, 1, 1, ref)

        result = metropolis(p, 10, initial=SpinConfig(ref))

        assert result.trace[0].overlap == 1
        assert result.trace[0].as_row()[0] == "0"

    def test_infinite_temperature_accepts_all(self):
        """Test beta = 0: every proposal is accepted."""
        result = metropolis(CftParams(2, 1, 0, TruthTable.zeros(2)), 300)

        assert result.acceptance_rate == 1.0

    def test_invalid_steps(self):
        """Test steps below 1."""
        with pytest.raises(ValidationError):
            metropolis(CftParams(2, 1, 1, TruthTable.zeros(2)), 0)

    def test_histogram_cap(self):
        """Test that state tracking is limited to n <= 4."""
        with pytest.raises(CapExceededError):
            metropolis(CftParams(5, 1, 1, TruthTable.zeros(5)), 10, track_states=True)

    def test_histogram_counts_steps(self):
        """Test one histogram entry per step."""
        p = CftParams(2, 1, 1, TruthTable.zeros(2))
        result = metropolis(p, 400, track_states=True)

        assert sum(result.histogram.values()) == 400

    @pytest.mark.slow
    def test_converges_to_boltzmann(self):
        """Test visit frequencies against the exact distribution at n = 2."""
        p = CftParams(2, 1, 1, atom(2, 1), seed=7)

        result = metropolis(p, 10_000_000, track_states=True)

        assert total_variation(result.histogram, exact_distribution(p)) < 0.02
