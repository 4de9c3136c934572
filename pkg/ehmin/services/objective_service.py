import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ehmin.models.domain import PureState, RealArray
from ehmin.models.errors import ArityMismatch
from ehmin.models.schemas import EhminResult, GAConfig
from ehmin.services import ga_service, unitary_service
from ehmin.services.state_service import shannon_entropy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Objective:
    """f(x) = H_meas((⊗_j U(x_j)) |state>) for a fixed state"""

    state: PureState

    @property
    def arity(self) -> int:
        return unitary_service.param_arity(self.state.dims)


def _check_arity(obj: Objective, xs: np.ndarray) -> None:
    if xs.shape[-1] != obj.arity:
        raise ArityMismatch(
            f"objective on dims {obj.state.dims} takes {obj.arity} parameters, "
            f"got {xs.shape[-1]}"
        )


def rotated_amplitudes(obj: Objective, xs: npt.ArrayLike) -> np.ndarray:
    """Amplitudes of the rotated state for each row of xs, shape (m, Π d)"""
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    _check_arity(obj, xs)
    unitaries = unitary_service.local_unitaries_batch(obj.state.dims, xs)
    return unitary_service.apply_local_batch(
        obj.state.dims, obj.state.amplitudes, unitaries
    )


def evaluate_many(obj: Objective, xs: npt.ArrayLike) -> RealArray:
    """Vectorized objective over a (m, arity) batch"""
    amplitudes = rotated_amplitudes(obj, xs)
    return np.asarray(shannon_entropy(np.abs(amplitudes) ** 2)).reshape(-1)


def evaluate(obj: Objective, x: npt.ArrayLike) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ArityMismatch("expected a flat parameter vector")
    return float(evaluate_many(obj, x)[0])


def min_representation(obj: Objective, x: npt.ArrayLike) -> RealArray:
    """Outcome probabilities of the rotated state, sorted descending"""
    probabilities = np.abs(rotated_amplitudes(obj, x)[0]) ** 2
    return np.sort(probabilities)[::-1]


def ehmin(state: PureState, config: GAConfig) -> EhminResult:
    """Minimal measurement entropy over local unitaries, by the island GA.

    The identity point x = 0 is seeded into the first population, so the
    result never exceeds the entropy of the unrotated state.
    """
    obj = Objective(state=state)
    logger.info("ehmin on dims %s (arity %d)", state.dims, obj.arity)
    report = ga_service.search(
        lambda xs: evaluate_many(obj, xs),
        obj.arity,
        config,
        vectorized=True,
        initial=np.zeros((1, obj.arity)),
    )
    return EhminResult.from_report(report)
