import numpy as np
import pytest
from numpy.testing import assert_allclose

from ehmin.models.domain import DensityMatrix
from ehmin.models.errors import (
    BadCut,
    BadSubsystemIndex,
    LengthMismatch,
    NotHermitian,
    NotNormalized,
    ZeroVector,
)
from ehmin.services import state_service
from tests.helpers import LN2, LN3


class TestMakeState:
    def test_rejects_wrong_length(self):
        with pytest.raises(LengthMismatch):
            state_service.make_state([2, 2], [1, 0, 0])

    def test_rejects_zero_vector(self):
        with pytest.raises(ZeroVector):
            state_service.make_state([2], [0, 0])

    def test_rejects_unnormalized_vector(self):
        with pytest.raises(NotNormalized):
            state_service.make_state([2], [3, 4])

    def test_renormalize_rescales(self):
        s = state_service.make_state([2], [3, 4], renormalize=True)
        assert_allclose(s.amplitudes, [0.6, 0.8])
        assert state_service.state_norm(s) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_below_two_is_rejected(self):
        with pytest.raises(LengthMismatch):
            state_service.make_state([1, 2], [1, 0])

    def test_amplitudes_are_read_only(self, bell):
        with pytest.raises(ValueError):
            bell.amplitudes[0] = 0


class TestMeasEntropy:
    def test_basis_state_is_zero(self):
        s = state_service.basis_state([2, 2])
        assert state_service.meas_entropy(s) == 0.0

    def test_bell_is_ln2(self, bell):
        assert state_service.meas_entropy(bell) == pytest.approx(LN2, abs=1e-12)

    def test_uniform_superposition(self):
        dims = [3, 3]
        s = state_service.make_state(dims, np.ones(9) / 3)
        assert state_service.meas_entropy(s) == pytest.approx(2 * LN3, abs=1e-12)

    def test_zero_probabilities_contribute_nothing(self):
        assert state_service.shannon_entropy([1.0, 0.0, 0.0]) == 0.0

    def test_additive_over_tensor_products(self):
        s1 = state_service.random_state([2, 3], seed=1)
        s2 = state_service.random_state([2], seed=2)
        joint = state_service.tensor(s1, s2)
        assert state_service.meas_entropy(joint) == pytest.approx(
            state_service.meas_entropy(s1) + state_service.meas_entropy(s2),
            abs=1e-10,
        )


class TestReduce:
    def test_bell_reduces_to_maximally_mixed(self, bell):
        rho = state_service.reduce(bell, [0])
        assert_allclose(rho.entries, np.eye(2) / 2, atol=1e-12)
        assert state_service.von_neumann_entropy(rho) == pytest.approx(LN2)

    def test_trace_is_one(self):
        s = state_service.random_state([2, 3, 2], seed=5)
        rho = state_service.reduce(s, [0, 2])
        assert rho.dims == (2, 2)
        assert np.trace(rho.entries).real == pytest.approx(1.0)

    def test_both_sides_have_equal_entropy(self):
        s = state_service.random_state([3, 3], seed=3)
        left = state_service.von_neumann_entropy(state_service.reduce(s, [0]))
        right = state_service.von_neumann_entropy(state_service.reduce(s, [1]))
        assert left == pytest.approx(right, abs=1e-9)

    @pytest.mark.parametrize("keep", [[], [0, 1], [2]])
    def test_bad_subsets(self, bell, keep):
        with pytest.raises(BadSubsystemIndex):
            state_service.reduce(bell, keep)

    def test_non_hermitian_matrix(self):
        rho = DensityMatrix(dims=(2,), entries=np.array([[1, 1], [0, 0]]))
        with pytest.raises(NotHermitian):
            state_service.von_neumann_entropy(rho)

    def test_diagonal_entropy_bounds_von_neumann(self):
        for seed in range(5):
            s = state_service.random_state([2, 2, 2], seed=seed)
            rho = state_service.reduce(s, [0, 1])
            assert state_service.diagonal_entropy(
                rho
            ) >= state_service.von_neumann_entropy(rho) - 1e-12

    def test_measured_entropies_of_parts_and_whole(self):
        for seed in range(5):
            s = state_service.random_state([2, 3, 2], seed=seed)
            h_a = state_service.diagonal_entropy(state_service.reduce(s, [0]))
            h_b = state_service.diagonal_entropy(state_service.reduce(s, [1]))
            h_ab = state_service.diagonal_entropy(state_service.reduce(s, [0, 1]))
            assert h_a <= h_ab + 1e-12
            assert h_ab <= h_a + h_b + 1e-12


class TestSchmidt:
    def test_bell_coefficients(self, bell):
        assert_allclose(
            state_service.schmidt_coefficients(bell, [0]), [1 / np.sqrt(2)] * 2
        )

    def test_squares_sum_to_one(self):
        s = state_service.random_state([2, 3, 2], seed=11)
        coefficients = state_service.schmidt_coefficients(s, [1])
        assert np.sum(coefficients**2) == pytest.approx(1.0)

    def test_entropy_of_coefficients_matches_both_sides(self):
        s = state_service.random_state([2, 3, 2], seed=12)
        coefficients = state_service.schmidt_coefficients(s, [0])
        expected = state_service.shannon_entropy(coefficients**2)
        for side in ([0], [1, 2]):
            rho = state_service.reduce(s, side)
            assert state_service.von_neumann_entropy(rho) == pytest.approx(
                expected, abs=1e-9
            )

    def test_empty_cut(self, bell):
        with pytest.raises(BadCut):
            state_service.schmidt_coefficients(bell, [])


class TestMeasureSubsystem:
    def test_ghz_branches(self, ghz3):
        outcomes = state_service.measure_subsystem(ghz3, 0)
        assert [p for p, _ in outcomes] == pytest.approx([0.5, 0.5])
        assert_allclose(outcomes[0][1].amplitudes, [1, 0, 0, 0], atol=1e-12)
        assert_allclose(outcomes[1][1].amplitudes, [0, 0, 0, 1], atol=1e-12)

    def test_probabilities_sum_to_one(self):
        s = state_service.random_state([2, 3, 2], seed=4)
        outcomes = state_service.measure_subsystem(s, 1)
        assert len(outcomes) == 3
        assert sum(p for p, _ in outcomes) == pytest.approx(1.0)
        assert all(branch.dims == (2, 2) for _, branch in outcomes)

    def test_out_of_range(self, bell):
        with pytest.raises(BadSubsystemIndex):
            state_service.measure_subsystem(bell, 2)


class TestNamedStates:
    def test_ghz_amplitudes(self):
        s = state_service.ghz_state(3, 2, np.ones(3) / np.sqrt(3))
        expected = np.zeros(9)
        expected[[0, 4, 8]] = 1 / np.sqrt(3)
        assert_allclose(s.amplitudes, expected)

    def test_ghz_needs_normalized_coefficients(self):
        with pytest.raises(NotNormalized):
            state_service.ghz_state(2, 3, [1, 1])

    def test_w_places_coefficients_on_single_excitations(self):
        coeffs = np.array([0.6, 0.0, 0.8])
        s = state_service.w_state(coeffs)
        assert s.amplitudes[1] == pytest.approx(0.6)
        assert s.amplitudes[4] == pytest.approx(0.8)
        assert state_service.meas_entropy(s) == pytest.approx(
            -(0.36 * np.log(0.36) + 0.64 * np.log(0.64))
        )

    def test_random_state_is_seeded(self):
        s1 = state_service.random_state([2, 2, 2], seed=7)
        s2 = state_service.random_state([2, 2, 2], seed=7)
        assert np.array_equal(s1.amplitudes, s2.amplitudes)
        assert state_service.state_norm(s1) == pytest.approx(1.0, abs=1e-10)

    def test_random_state_probabilities_average_out(self):
        probabilities = np.array(
            [
                state_service.random_state([2, 3], seed=seed).probabilities
                for seed in range(10_000)
            ]
        )
        assert_allclose(probabilities.mean(axis=0), np.full(6, 1 / 6), rtol=0.05)

    def test_basis_state_digits(self):
        s = state_service.basis_state([2, 3], [1, 2])
        assert s.amplitudes[5] == 1
