import numpy as np
import pytest

from exact_uncertainty.errors import NotComplementary, NotPrime
from exact_uncertainty.fisher import collision_length
from exact_uncertainty.mub import (
    MubSet,
    complementarity_check,
    is_prime,
    measurement_distribution,
    mub_construct,
)
from exact_uncertainty.random_states import random_finite_state
from exact_uncertainty.relations import verify_ivanovic
from exact_uncertainty.states import FiniteState


def test_prime_detection():
    assert [d for d in range(2, 20) if is_prime(d)] == [2, 3, 5, 7, 11, 13, 17, 19]


class TestConstruction:
    def test_qubit_pauli_overlaps(self):
        bases = mub_construct(2)
        assert bases.n_bases == 3
        check = complementarity_check(bases)
        assert check["overlap_deviation"] < 1e-14

    @pytest.mark.parametrize("d", [3, 5, 7, 11])
    def test_odd_prime_overlaps(self, d):
        bases = mub_construct(d)
        assert bases.n_bases == d + 1
        check = complementarity_check(bases)
        assert check["orthonormality_deviation"] < 1e-12
        assert check["overlap_deviation"] < 1e-12

    def test_composite_rejected(self):
        with pytest.raises(NotPrime):
            mub_construct(4)

    def test_deterministic_phases(self):
        a = mub_construct(5)
        b = mub_construct(5)
        assert np.array_equal(a.bases, b.bases)
        for basis in a.bases:
            for j in range(5):
                lead = basis[:, j][np.abs(basis[:, j]) > 1e-12][0]
                assert abs(lead.imag) < 1e-14 and lead.real > 0


class TestChecks:
    def test_perturbed_basis_rejected(self):
        bases = mub_construct(3)
        perturbed = bases.bases.copy()
        perturbed[1][0, 0] += 0.01
        with pytest.raises(NotComplementary):
            complementarity_check(MubSet(3, perturbed))

    def test_z_eigenstate_uniform_in_x_basis(self):
        bases = mub_construct(2)
        state = FiniteState.from_vector([1.0, 0.0])
        dist = measurement_distribution(state, bases, 1)
        assert dist.probs == pytest.approx([0.5, 0.5], abs=1e-14)

    def test_distributions_normalized(self, rng):
        bases = mub_construct(7)
        state = random_finite_state(rng, 7, pure=False)
        for i in range(bases.n_bases):
            dist = measurement_distribution(state, bases, i)
            assert dist.probs.sum() == pytest.approx(1.0, abs=1e-12)


class TestSumRuleClosure:
    @pytest.mark.parametrize("d", [2, 3])
    def test_hundred_random_pure_states(self, d):
        rng = np.random.default_rng(100 + d)
        bases = mub_construct(d)
        for _ in range(100):
            state = random_finite_state(rng, d)
            report = verify_ivanovic(state, bases)
            assert report.residual < 1e-12
            assert report.left == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3])
    def test_random_mixed_states(self, d, rng):
        bases = mub_construct(d)
        for _ in range(25):
            state = random_finite_state(rng, d, pure=False)
            report = verify_ivanovic(state, bases)
            assert report.residual < 1e-12
            assert report.left == pytest.approx(1.0 + state.purity, abs=1e-12)
            assert report.left <= 2.0 + 1e-12

    def test_minimal_uncertainty_forces_maximal_elsewhere(self):
        # collision length 1 in one basis forces length d in all others
        bases = mub_construct(3)
        state = FiniteState.from_vector(bases.bases[2][:, 1])
        lengths = [collision_length(measurement_distribution(state, bases, i))
                   for i in range(4)]
        assert lengths[2] == pytest.approx(1.0, abs=1e-12)
        for i in (0, 1, 3):
            assert lengths[i] == pytest.approx(3.0, abs=1e-9)
