"""Local unitaries from real parameter vectors.

Qubits use the three-angle form

    U(β, δ, γ) = [[e^{i(-β-δ)} cos γ, -e^{i(-β+δ)} sin γ],
                  [e^{i(β-δ)} sin γ,   e^{i(β+δ)} cos γ]]

and every other dimension d uses U = exp(iH) with H Hermitian and built from
d² reals: the d diagonal entries first, then the strict upper triangle in
row-major order as (re, im) pairs.

The ``*_batch``/plural functions take a leading batch axis so a whole GA
population can be evaluated in a single pass.
"""

from collections.abc import Sequence
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from ehmin.models.domain import ComplexArray, PureState
from ehmin.models.errors import (
    DimMismatch,
    EigenFailure,
    LengthMismatch,
    NotHermitian,
)

HERMITIAN_TOLERANCE = 1e-9


def arity(d: int) -> int:
    """Number of real parameters of one local unitary"""
    return 3 if d == 2 else d * d


def param_arity(dims: Sequence[int]) -> int:
    return sum(arity(d) for d in dims)


def adjoint(u: ComplexArray) -> ComplexArray:
    return np.conj(np.swapaxes(u, -1, -2))


# -------- QUBITS --------
def qubit_unitaries(angles: npt.ArrayLike) -> ComplexArray:
    """Batched three-angle form: (..., 3) -> (..., 2, 2)"""
    angles = np.asarray(angles, dtype=np.float64)
    beta, delta, gamma = angles[..., 0], angles[..., 1], angles[..., 2]
    cos, sin = np.cos(gamma), np.sin(gamma)
    u = np.empty(angles.shape[:-1] + (2, 2), dtype=np.complex128)
    u[..., 0, 0] = np.exp(1j * (-beta - delta)) * cos
    u[..., 0, 1] = -np.exp(1j * (-beta + delta)) * sin
    u[..., 1, 0] = np.exp(1j * (beta - delta)) * sin
    u[..., 1, 1] = np.exp(1j * (beta + delta)) * cos
    return u


def qubit_unitary(beta: float, delta: float, gamma: float) -> ComplexArray:
    return qubit_unitaries([beta, delta, gamma])


# -------- QUDITS --------
@lru_cache(maxsize=None)
def _upper_triangle(d: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(d, k=1)
    return rows, cols


def hermitians_from_params(d: int, params: npt.ArrayLike) -> ComplexArray:
    """Batched Hermitian filling: (..., d²) -> (..., d, d)"""
    params = np.asarray(params, dtype=np.float64)
    if params.shape[-1] != d * d:
        raise LengthMismatch(f"a {d}x{d} Hermitian needs {d * d} parameters")

    rows, cols = _upper_triangle(d)
    h = np.zeros(params.shape[:-1] + (d, d), dtype=np.complex128)
    diagonal = np.arange(d)
    h[..., diagonal, diagonal] = params[..., :d]
    off = params[..., d:]
    upper = off[..., 0::2] + 1j * off[..., 1::2]
    h[..., rows, cols] = upper
    h[..., cols, rows] = np.conj(upper)
    return h


def hermitian_from_params(d: int, params: npt.ArrayLike) -> ComplexArray:
    params = np.asarray(params, dtype=np.float64)
    if params.ndim != 1:
        raise LengthMismatch("expected a flat parameter list")
    return hermitians_from_params(d, params)


def unitary_exp(h: npt.ArrayLike) -> ComplexArray:
    """exp(iH) through the spectral decomposition H = V Λ V†; batches allowed"""
    h = np.asarray(h, dtype=np.complex128)
    if not np.allclose(h, adjoint(h), atol=HERMITIAN_TOLERANCE, rtol=0):
        raise NotHermitian("matrix to exponentiate is not Hermitian")
    try:
        eigenvalues, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as e:
        raise EigenFailure(f"eigendecomposition did not converge: {e}") from e
    return (v * np.exp(1j * eigenvalues)[..., None, :]) @ adjoint(v)


# -------- LOCAL SETS --------
def local_unitaries_batch(
    dims: Sequence[int], xs: npt.ArrayLike
) -> list[ComplexArray]:
    """One (m, d_j, d_j) stack per subsystem for a batch of m parameter vectors"""
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    if xs.shape[-1] != param_arity(dims):
        raise LengthMismatch(
            f"dimensions {tuple(dims)} need {param_arity(dims)} parameters, "
            f"got {xs.shape[-1]}"
        )

    unitaries = []
    offset = 0
    for d in dims:
        k = arity(d)
        block = xs[:, offset : offset + k]
        if d == 2:
            unitaries.append(qubit_unitaries(block))
        else:
            unitaries.append(unitary_exp(hermitians_from_params(d, block)))
        offset += k
    return unitaries


def local_unitaries_from_params(
    dims: Sequence[int], x: npt.ArrayLike
) -> list[ComplexArray]:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise LengthMismatch("expected a flat parameter vector")
    return [u[0] for u in local_unitaries_batch(dims, x)]


def apply_local_batch(
    dims: Sequence[int], amplitudes: npt.ArrayLike, unitaries: Sequence[ComplexArray]
) -> ComplexArray:
    """Apply per-subsystem unitary stacks to one state, giving (m, Π d) amplitudes.

    Each U_j acts along axis j only; the full Kronecker product is never built.
    """
    dims = tuple(dims)
    if len(unitaries) != len(dims):
        raise DimMismatch(f"{len(unitaries)} unitaries for {len(dims)} subsystems")

    batch = unitaries[0].shape[0] if unitaries[0].ndim == 3 else 1
    psi = np.broadcast_to(
        np.asarray(amplitudes, dtype=np.complex128), (batch, int(np.prod(dims)))
    )
    for j, (d, u) in enumerate(zip(dims, unitaries)):
        if u.shape[-2:] != (d, d):
            raise DimMismatch(f"subsystem {j} has dimension {d}, unitary {u.shape}")
        u = u if u.ndim == 3 else u[None]
        left = int(np.prod(dims[:j]))
        psi = u[:, None] @ psi.reshape(batch, left, d, -1)
    return psi.reshape(batch, -1)


def apply_local(s: PureState, us: Sequence[ComplexArray]) -> PureState:
    """(U_0 ⊗ ... ⊗ U_{n-1}) |s>"""
    if len(us) != s.n_subsystems:
        raise DimMismatch(f"{len(us)} unitaries for {s.n_subsystems} subsystems")
    for j, (d, u) in enumerate(zip(s.dims, us)):
        if np.shape(u) != (d, d):
            raise DimMismatch(f"subsystem {j} needs a {d}x{d} unitary")
    stacks = [np.asarray(u, dtype=np.complex128)[None] for u in us]
    amplitudes = apply_local_batch(s.dims, s.amplitudes, stacks)[0]
    return PureState(dims=s.dims, amplitudes=amplitudes)


def kron_unitaries(us: Sequence[ComplexArray]) -> ComplexArray:
    """Explicit U_0 ⊗ ... ⊗ U_{n-1}, for small systems only"""
    out = np.ones((1, 1), dtype=np.complex128)
    for u in us:
        out = np.kron(out, u)
    return out
