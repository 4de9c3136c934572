"""Multipartite pure states: construction, entropies, reductions, named families.

Basis ordering is row-major with subsystem 0 most significant, so the
amplitude of |i_0 i_1 ... i_{n-1}> sits at ``np.ravel_multi_index(i, dims)``.
Entropies are in nats.
"""

import logging
from collections.abc import Iterable, Sequence
from math import prod
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy.special import entr

from ehmin.models.domain import DensityMatrix, PureState, RealArray
from ehmin.models.errors import (
    BadCut,
    BadSubsystemIndex,
    LengthMismatch,
    NotHermitian,
    NotNormalized,
    ZeroVector,
)

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-6
ZERO_NORM = 1e-12
PROBABILITY_FLOOR = 1e-15
EIGENVALUE_FLOOR = 1e-12
HERMITIAN_TOLERANCE = 1e-10


def _check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise LengthMismatch(f"invalid subsystem dimensions {dims}")
    return dims


def make_state(
    dims: Sequence[int], amplitudes: npt.ArrayLike, renormalize: bool = False
) -> PureState:
    """Build a state, rescaling it to exact unit norm"""
    dims = _check_dims(dims)
    amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if amps.size != prod(dims):
        raise LengthMismatch(
            f"{amps.size} amplitudes do not fit dimensions {dims} ({prod(dims)})"
        )

    norm = float(np.linalg.norm(amps))
    if norm < ZERO_NORM:
        raise ZeroVector("state vector has zero norm")
    if not renormalize and abs(norm - 1.0) > NORM_TOLERANCE:
        raise NotNormalized(f"state norm {norm:.9f} is not 1 within {NORM_TOLERANCE}")
    if abs(norm - 1.0) > NORM_TOLERANCE:
        logger.debug("renormalizing state of norm %.9f", norm)

    return PureState(dims=dims, amplitudes=amps / norm)


def state_norm(s: PureState) -> float:
    return float(np.linalg.norm(s.amplitudes))


def tensor(s1: PureState, s2: PureState) -> PureState:
    """|s1> ⊗ |s2>; s1 subsystems come first"""
    return PureState(
        dims=s1.dims + s2.dims, amplitudes=np.kron(s1.amplitudes, s2.amplitudes)
    )


# -------- ENTROPIES --------
def shannon_entropy(probabilities: npt.ArrayLike) -> float | RealArray:
    """-Σ p ln p over the last axis, with 0 ln 0 = 0"""
    p = np.asarray(probabilities, dtype=np.float64)
    p = np.where(p < PROBABILITY_FLOOR, 0.0, p)
    h = entr(p).sum(axis=-1)
    return float(h) if np.ndim(h) == 0 else h


def meas_entropy(s: PureState) -> float:
    """Shannon entropy of a computational-basis measurement of the whole state"""
    return float(shannon_entropy(s.probabilities))


def diagonal_entropy(rho: DensityMatrix) -> float:
    """H_sh(Diag(rho))"""
    return float(shannon_entropy(np.real(np.diag(rho.entries))))


def _check_subsystems(s: PureState, keep: Iterable[int]) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep or len(keep) >= s.n_subsystems:
        raise BadSubsystemIndex(
            f"kept subsystems {keep} must be a non-empty proper subset "
            f"of {s.n_subsystems} subsystems"
        )
    if keep[0] < 0 or keep[-1] >= s.n_subsystems:
        raise BadSubsystemIndex(f"subsystem index out of range in {keep}")
    return keep


def reduce(s: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Partial trace of |s><s| over every subsystem not in ``keep``"""
    keep = _check_subsystems(s, keep)
    traced = tuple(i for i in range(s.n_subsystems) if i not in keep)
    psi = s.as_tensor()
    rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    kept_dims = tuple(s.dims[i] for i in keep)
    size = prod(kept_dims)
    return DensityMatrix(dims=kept_dims, entries=rho.reshape(size, size))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Σ λ ln λ over the spectrum of rho; eigenvalues below 1e-12 count as zero"""
    entries = np.asarray(rho.entries)
    if not np.allclose(entries, entries.conj().T, atol=HERMITIAN_TOLERANCE, rtol=0):
        raise NotHermitian("density matrix is not Hermitian")
    eigenvalues = np.linalg.eigvalsh(entries)
    eigenvalues = np.where(eigenvalues < EIGENVALUE_FLOOR, 0.0, eigenvalues)
    return float(entr(eigenvalues).sum())


def schmidt_coefficients(s: PureState, cut: Iterable[int]) -> RealArray:
    """Singular values of the amplitude matrix split into ``cut`` | complement"""
    try:
        side = _check_subsystems(s, cut)
    except BadSubsystemIndex as e:
        raise BadCut(str(e)) from e
    rest = tuple(i for i in range(s.n_subsystems) if i not in side)
    rows = prod(s.dims[i] for i in side)
    matrix = np.transpose(s.as_tensor(), side + rest).reshape(rows, -1)
    return np.linalg.svd(matrix, compute_uv=False)


# -------- MEASUREMENT --------
def measure_subsystem(s: PureState, index: int) -> list[tuple[float, PureState]]:
    """Outcomes of measuring one subsystem in the computational basis.

    Returns ``(p_j, |psi_j>)`` for every outcome j with non-negligible
    probability, |psi_j> being the normalized state of the other subsystems.
    """
    if s.n_subsystems < 2:
        raise BadSubsystemIndex("measuring leaves no subsystem behind")
    if not 0 <= index < s.n_subsystems:
        raise BadSubsystemIndex(f"subsystem {index} out of range")

    rest_dims = s.dims[:index] + s.dims[index + 1 :]
    psi = np.moveaxis(s.as_tensor(), index, 0)
    outcomes = []
    for j in range(s.dims[index]):
        branch = psi[j].ravel()
        p = float(np.vdot(branch, branch).real)
        if p > PROBABILITY_FLOOR:
            outcomes.append((p, make_state(rest_dims, branch, renormalize=True)))
    return outcomes


# -------- NAMED FAMILIES --------
def _check_coeffs(coeffs: npt.ArrayLike, length: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=np.complex128).ravel()
    if c.size != length:
        raise LengthMismatch(f"expected {length} coefficients, got {c.size}")
    norm = float(np.linalg.norm(c))
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise NotNormalized(f"coefficient norm {norm:.9f} is not 1")
    return c


def ghz_state(d: int, n: int, coeffs: npt.ArrayLike) -> PureState:
    """Generalized GHZ state Σ_i a_i |i>^{⊗n}"""
    dims = _check_dims([d] * n)
    c = _check_coeffs(coeffs, d)
    amps = np.zeros(prod(dims), dtype=np.complex128)
    for i in range(d):
        amps[np.ravel_multi_index((i,) * n, dims)] = c[i]
    return make_state(dims, amps)


def w_state(coeffs: npt.ArrayLike) -> PureState:
    """a_1|0...01> + a_2|0...10> + ... + a_n|1...00> on n qubits"""
    c = np.asarray(coeffs, dtype=np.complex128).ravel()
    n = c.size
    if n < 1:
        raise LengthMismatch("a W state needs at least one coefficient")
    c = _check_coeffs(c, n)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[1 << np.arange(n)] = c
    return make_state([2] * n, amps)


def basis_state(
    dims: Sequence[int], digits: Optional[Sequence[int]] = None
) -> PureState:
    """Computational basis vector, |0...0> by default"""
    dims = _check_dims(dims)
    digits = tuple(digits) if digits is not None else (0,) * len(dims)
    amps = np.zeros(prod(dims), dtype=np.complex128)
    amps[np.ravel_multi_index(digits, dims)] = 1.0
    return make_state(dims, amps)


def random_state(dims: Sequence[int], seed: int) -> PureState:
    """Haar-random state from normalized standard complex Gaussians"""
    dims = _check_dims(dims)
    rng = np.random.default_rng(seed)
    size = prod(dims)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return make_state(dims, amps, renormalize=True)
