"""Reference values for E_Hmin that do not go through the genetic algorithm."""

import logging
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize

from ehmin import config as settings
from ehmin.models.domain import PureState
from ehmin.models.errors import NoOracleApplicable, NotBipartite
from ehmin.models.schemas import EntropyReport, GAConfig, OracleKind, VerifyReport
from ehmin.services import objective_service, state_service
from ehmin.services.objective_service import Objective

logger = logging.getLogger(__name__)

SUPPORT_TOLERANCE = 1e-12


def bipartite_oracle(s: PureState) -> float:
    """Reduced von Neumann entropy of a two-subsystem state"""
    if s.n_subsystems != 2:
        raise NotBipartite(f"expected 2 subsystems, got {s.n_subsystems}")
    return state_service.von_neumann_entropy(state_service.reduce(s, [0]))


def ghz_oracle(coeffs: npt.ArrayLike) -> float:
    """-Σ |a_i|² ln |a_i|² for a generalized GHZ state"""
    return float(state_service.shannon_entropy(np.abs(np.asarray(coeffs)) ** 2))


def w_oracle(coeffs: npt.ArrayLike) -> float:
    """A generalized W state is already minimal: its own measurement entropy"""
    return float(state_service.shannon_entropy(np.abs(np.asarray(coeffs)) ** 2))


def brute_min(
    obj: Objective,
    restarts: int = settings.BRUTE_RESTARTS,
    local_steps: int = settings.BRUTE_STEPS,
    seed: int = 0,
) -> float:
    """Best of Nelder-Mead runs from x = 0 and from random starting points"""
    rng = np.random.default_rng(seed)
    starts = np.vstack(
        [np.zeros(obj.arity), rng.uniform(-np.pi, np.pi, (restarts, obj.arity))]
    )
    best = float("inf")
    for start in starts:
        result = minimize(
            lambda x: objective_service.evaluate(obj, x),
            start,
            method="Nelder-Mead",
            options={"maxfev": local_steps, "xatol": 1e-9, "fatol": 1e-12},
        )
        best = min(best, float(result.fun))
    logger.debug("brute_min over %d starts: %.10f", len(starts), best)
    return best


# -------- SUPPORT PATTERNS --------
def _support(s: PureState) -> np.ndarray:
    return np.flatnonzero(s.probabilities > SUPPORT_TOLERANCE)


def ghz_coefficients(s: PureState) -> Optional[np.ndarray]:
    """Coefficients a_i if s = Σ_i a_i |i...i>, else None"""
    d = s.dims[0]
    if any(dim != d for dim in s.dims):
        return None
    diagonal = np.array(
        [np.ravel_multi_index((i,) * s.n_subsystems, s.dims) for i in range(d)]
    )
    if not np.isin(_support(s), diagonal).all():
        return None
    return s.amplitudes[diagonal]


def w_coefficients(s: PureState) -> Optional[np.ndarray]:
    """Coefficients a_k (on |0..1..0> with the 1 at weight 2^k) of a W-shaped state"""
    if any(dim != 2 for dim in s.dims):
        return None
    single = 1 << np.arange(s.n_subsystems)
    if not np.isin(_support(s), single).all():
        return None
    return s.amplitudes[single]


def detect_oracle(s: PureState) -> tuple[OracleKind, float]:
    """Pick the closed form that applies to s, by its support pattern"""
    if s.n_subsystems < 2:
        raise NoOracleApplicable("a single subsystem can always be rotated to zero")
    if s.n_subsystems == 2:
        return OracleKind.bipartite, bipartite_oracle(s)
    coeffs = ghz_coefficients(s)
    if coeffs is not None:
        return OracleKind.ghz, ghz_oracle(coeffs)
    coeffs = w_coefficients(s)
    if coeffs is not None:
        return OracleKind.w, w_oracle(coeffs)
    raise NoOracleApplicable(
        f"state on dims {s.dims} is neither bipartite, GHZ- nor W-shaped"
    )


def verify(s: PureState, config: GAConfig) -> VerifyReport:
    kind, expected = detect_oracle(s)
    result = objective_service.ehmin(s, config)
    logger.info(
        "verify (%s): ehmin=%.10f oracle=%.10f", kind.value, result.value, expected
    )
    return VerifyReport(
        oracle=kind,
        ehmin=result.value,
        oracle_value=expected,
        gap=abs(result.value - expected),
    )


def entropy_report(s: PureState) -> EntropyReport:
    """Measurement entropy, plus the Schmidt data of a bipartite state"""
    report = EntropyReport(meas_entropy=state_service.meas_entropy(s))
    if s.n_subsystems == 2:
        report.von_neumann_entropy = bipartite_oracle(s)
        report.schmidt_coefficients = state_service.schmidt_coefficients(
            s, [0]
        ).tolist()
    return report
