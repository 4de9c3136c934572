import time

import numpy as np
import pytest

from ehmin.models.errors import ArityMismatch
from ehmin.models.schemas import GAConfig
from ehmin.services import (
    ga_service,
    objective_service,
    state_service,
    unitary_service,
)
from ehmin.services.objective_service import Objective
from tests.helpers import LN2, LN3


def ehmin_value(s, config=None) -> float:
    return objective_service.ehmin(s, config or GAConfig()).value


class TestObjective:
    def test_arity(self):
        obj = Objective(state_service.random_state([2, 3, 2], seed=0))
        assert obj.arity == 15

    def test_identity_gives_measurement_entropy(self):
        s = state_service.random_state([2, 3], seed=1)
        obj = Objective(s)
        assert objective_service.evaluate(obj, np.zeros(obj.arity)) == pytest.approx(
            state_service.meas_entropy(s)
        )

    def test_wrong_arity(self, bell):
        with pytest.raises(ArityMismatch):
            objective_service.evaluate(Objective(bell), np.zeros(5))

    def test_batch_matches_single_evaluations(self, rng, bell):
        obj = Objective(bell)
        xs = rng.uniform(-3, 3, (7, obj.arity))
        batch = objective_service.evaluate_many(obj, xs)
        assert batch.shape == (7,)
        for x, value in zip(xs, batch):
            assert objective_service.evaluate(obj, x) == pytest.approx(value)

    def test_values_are_bounded(self, rng):
        s = state_service.random_state([2, 2, 2], seed=3)
        values = objective_service.evaluate_many(
            Objective(s), rng.uniform(-3, 3, (50, 9))
        )
        assert np.all(values >= 0)
        assert np.all(values <= 3 * LN2 + 1e-12)

    def test_hadamard_spreads_a_basis_state(self):
        obj = Objective(state_service.basis_state([2]))
        x = [0.0, 0.0, np.pi / 4]
        assert objective_service.evaluate(obj, x) == pytest.approx(LN2)

    def test_min_representation_is_sorted(self, rng):
        obj = Objective(state_service.random_state([2, 2], seed=8))
        representation = objective_service.min_representation(
            obj, rng.uniform(-1, 1, obj.arity)
        )
        assert np.all(np.diff(representation) <= 0)
        assert representation.sum() == pytest.approx(1.0)


class TestEhmin:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_product_state_is_zero(self, n, fast_config):
        assert ehmin_value(state_service.basis_state([2] * n), fast_config) < 1e-6

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize(
        "coeffs, expected",
        [
            ([np.sqrt(0.5), np.sqrt(0.5)], 0.693147),
            ([np.sqrt(0.3), np.sqrt(0.7)], 0.610864),
        ],
    )
    def test_ghz_closed_form(self, n, coeffs, expected, fast_config):
        s = state_service.ghz_state(2, n, coeffs)
        assert ehmin_value(s, fast_config) == pytest.approx(expected, abs=1e-3)

    def test_uniform_w_state(self, fast_config):
        s = state_service.w_state(np.ones(3) / np.sqrt(3))
        assert ehmin_value(s, fast_config) == pytest.approx(LN3, abs=2e-3)

    def test_never_exceeds_unrotated_entropy(self, fast_config):
        s = state_service.random_state([2, 2, 2], seed=6)
        assert ehmin_value(s, fast_config) <= state_service.meas_entropy(s) + 1e-12

    def test_bounded_below_by_every_cut(self, fast_config):
        s = state_service.random_state([2, 3], seed=2)
        bound = state_service.von_neumann_entropy(state_service.reduce(s, [0]))
        assert ehmin_value(s, fast_config) >= bound - 1e-9

    def test_result_fields(self, fast_config, ghz3):
        result = objective_service.ehmin(ghz3, fast_config)
        assert len(result.params) == 9
        assert result.islands == fast_config.n_islands
        assert result.seed == fast_config.seed
        assert result.evaluations == (
            fast_config.n_islands * fast_config.n_population * (result.epochs + 1)
        )
        obj = Objective(ghz3)
        assert objective_service.evaluate(obj, result.params) == pytest.approx(
            result.value
        )

    def test_deterministic(self, fast_config):
        s = state_service.random_state([2, 2], seed=13)
        first = objective_service.ehmin(s, fast_config)
        second = objective_service.ehmin(s, fast_config)
        assert first.model_dump_json() == second.model_dump_json()


@pytest.mark.slow
class TestEhminProperties:
    """Statistical checks with the default GA configuration"""

    def test_bipartite_equals_reduced_entropy(self):
        for seed in range(20):
            s = state_service.random_state([2, 2], seed=seed)
            expected = state_service.von_neumann_entropy(state_service.reduce(s, [0]))
            assert ehmin_value(s) == pytest.approx(expected, abs=1e-3)
        for seed in range(10):
            s = state_service.random_state([3, 3], seed=100 + seed)
            expected = state_service.von_neumann_entropy(state_service.reduce(s, [0]))
            assert ehmin_value(s) == pytest.approx(expected, abs=1e-3)

    def test_rotated_product_state(self, rng):
        s = state_service.basis_state([2, 2, 2])
        us = unitary_service.local_unitaries_from_params(
            s.dims, rng.uniform(-2, 2, 9)
        )
        assert ehmin_value(unitary_service.apply_local(s, us)) < 1e-3

    def test_random_w_states(self, rng):
        for _ in range(3):
            coeffs = rng.normal(size=3) + 1j * rng.normal(size=3)
            coeffs /= np.linalg.norm(coeffs)
            s = state_service.w_state(coeffs)
            assert ehmin_value(s) == pytest.approx(
                state_service.meas_entropy(s), abs=2e-3
            )

    def test_additivity(self):
        for seed in range(10):
            s1 = state_service.random_state([2, 2], seed=200 + seed)
            s2 = state_service.random_state([2, 2], seed=300 + seed)
            joint = ehmin_value(state_service.tensor(s1, s2))
            assert joint == pytest.approx(
                ehmin_value(s1) + ehmin_value(s2), abs=3e-3
            )

    def test_local_unitary_invariance(self, rng):
        for seed in range(10):
            s = state_service.random_state([2, 2, 2], seed=400 + seed)
            us = unitary_service.local_unitaries_from_params(
                s.dims, rng.uniform(-3, 3, 9)
            )
            rotated = unitary_service.apply_local(s, us)
            assert ehmin_value(rotated) == pytest.approx(ehmin_value(s), abs=2e-3)

    def test_ancilla_invariance(self):
        ancilla = state_service.basis_state([2])
        for seed in range(10):
            s = state_service.random_state([2, 2, 2], seed=500 + seed)
            extended = state_service.tensor(s, ancilla)
            assert ehmin_value(extended) == pytest.approx(ehmin_value(s), abs=2e-3)

    def test_measurement_does_not_increase_on_average(self):
        for seed in range(10):
            s = state_service.random_state([2, 2, 2], seed=600 + seed)
            average = sum(
                p * ehmin_value(branch)
                for p, branch in state_service.measure_subsystem(s, 0)
            )
            assert ehmin_value(s) + 2e-3 >= average

    def test_independent_runs_agree_on_the_minimal_representation(self):
        s = state_service.random_state([2, 2, 2], seed=21)
        obj = Objective(s)
        first, second = (
            objective_service.min_representation(
                obj, objective_service.ehmin(s, GAConfig(seed=seed)).params
            )
            for seed in (1, 2)
        )
        assert np.max(np.abs(first - second)) <= 1e-3

    def test_islands_settle_disagreeing_single_island_runs(self):
        single = dict(n_population=10, n_bad=2, n_epochs=150, n_islands=1, n_rounds=1)
        for state_seed in range(5):
            s = state_service.random_state([2] * 5, seed=700 + state_seed)
            values = [
                ehmin_value(s, GAConfig(**single, seed=seed)) for seed in range(6)
            ]
            if max(values) - min(values) > 1e-2:
                islands = ehmin_value(s, GAConfig(n_islands=8, seed=0))
                assert islands <= min(values) + 1e-3
                return
        pytest.fail("every single-island run reached the same value")

    def test_one_ten_qubit_epoch(self):
        s = state_service.random_state([2] * 10, seed=0)
        obj = Objective(s)
        config = GAConfig(n_population=40, n_bad=10, n_epochs=1, n_islands=1)
        start = time.perf_counter()
        ga_service.run(
            lambda xs: objective_service.evaluate_many(obj, xs),
            obj.arity,
            config,
            vectorized=True,
        )
        assert time.perf_counter() - start <= 30.0

    def test_evaluation_scales_to_seventeen_qubits(self):
        s = state_service.random_state([2] * 17, seed=0)
        obj = Objective(s)
        start = time.perf_counter()
        objective_service.evaluate(obj, np.full(obj.arity, 0.3))
        assert time.perf_counter() - start <= 1.0
