"""Fermionic pure states on the Slater-determinant basis of Λ^n C^p.

Basis states are strictly increasing mode tuples in lexicographic order, with
modes numbered from 0. A one-particle basis change U acts on amplitudes through
its table of order-n minors (rows = new tuples, columns = old tuples), which is
the n-th exterior power of U.
"""

import logging
from functools import lru_cache
from itertools import combinations

import numpy as np
import numpy.typing as npt
from scipy.linalg import null_space

from ehmin.models.domain import ComplexArray, FermionState, MinorTable, RealArray
from ehmin.models.errors import (
    ArityMismatch,
    BadOrder,
    ConvergenceFailure,
    DimMismatch,
    LengthMismatch,
    NotNormalized,
    NotTwoFermion,
    ZeroVector,
)
from ehmin.models.schemas import EhminResult, GAConfig, SlaterReport
from ehmin.services import ga_service, unitary_service
from ehmin.services.state_service import NORM_TOLERANCE, ZERO_NORM, shannon_entropy

logger = logging.getLogger(__name__)

PAIR_SELECTION = 0.5
ZERO_WEIGHT = 1e-8
SLATER_TOLERANCE = 1e-8


# -------- BASIS --------
@lru_cache(maxsize=None)
def _basis(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    if not 1 <= n <= p:
        raise BadOrder(f"need 1 <= n <= p, got n={n}, p={p}")
    return tuple(combinations(range(p), n))


def fermion_basis(p: int, n: int) -> list[tuple[int, ...]]:
    return list(_basis(p, n))


@lru_cache(maxsize=None)
def _positions(p: int, n: int) -> dict[tuple[int, ...], int]:
    return {subset: i for i, subset in enumerate(_basis(p, n))}


def make_fermion_state(
    p: int, n: int, amplitudes: npt.ArrayLike, renormalize: bool = False
) -> FermionState:
    size = len(_basis(p, n))
    amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if amps.size != size:
        raise LengthMismatch(f"Λ^{n}C^{p} has {size} basis states, got {amps.size}")
    norm = float(np.linalg.norm(amps))
    if norm < ZERO_NORM:
        raise ZeroVector("fermion state has zero norm")
    if not renormalize and abs(norm - 1.0) > NORM_TOLERANCE:
        raise NotNormalized(f"fermion state norm {norm:.9f} is not 1")
    return FermionState(p=p, n=n, amplitudes=amps / norm)


def random_fermion_state(p: int, n: int, seed: int) -> FermionState:
    rng = np.random.default_rng(seed)
    size = len(_basis(p, n))
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return make_fermion_state(p, n, amps, renormalize=True)


def slater_state(p: int, weights: npt.ArrayLike) -> FermionState:
    """Two fermions Σ_i z_i |2i, 2i+1>"""
    weights = np.asarray(weights, dtype=np.complex128).ravel()
    if weights.size > p // 2:
        raise LengthMismatch(f"{p} modes hold at most {p // 2} pairs")
    positions = _positions(p, 2)
    amps = np.zeros(len(positions), dtype=np.complex128)
    for i, z in enumerate(weights):
        amps[positions[(2 * i, 2 * i + 1)]] = z
    return make_fermion_state(p, 2, amps)


# -------- MINORS --------
@lru_cache(maxsize=None)
def _laplace_plan(
    p: int, k: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays expanding every order-k minor along its first row.

    For row subset I: first[I] = I[0], rest[I] = position of I[1:].
    For column subset J and t < k: cols[t, J] = J[t], minus[t, J] = position
    of J without J[t] among the order-(k-1) subsets.
    """
    subsets = _basis(p, k)
    smaller = _positions(p, k - 1)
    first = np.array([s[0] for s in subsets])
    rest = np.array([smaller[s[1:]] for s in subsets])
    cols = np.array([[s[t] for s in subsets] for t in range(k)])
    minus = np.array(
        [[smaller[s[:t] + s[t + 1 :]] for s in subsets] for t in range(k)]
    )
    return first, rest, cols, minus


def compound_batch(us: npt.ArrayLike, n: int) -> ComplexArray:
    """Order-n minor tables of a (m, p, p) stack, shape (m, C(p,n), C(p,n)).

    Built bottom-up: order k reuses all order-(k-1) minors through Laplace
    expansion, never evaluating a determinant from scratch.
    """
    us = np.asarray(us, dtype=np.complex128)
    p = us.shape[-1]
    if not 1 <= n <= p:
        raise BadOrder(f"need 1 <= n <= {p}, got {n}")
    minors = us
    for k in range(2, n + 1):
        first, rest, cols, minus = _laplace_plan(p, k)
        acc = np.zeros(us.shape[:-2] + (len(first), len(first)), dtype=np.complex128)
        for t in range(k):
            term = (
                us[..., first[:, None], cols[t][None, :]]
                * minors[..., rest[:, None], minus[t][None, :]]
            )
            acc += term if t % 2 == 0 else -term
        minors = acc
    return minors


def minor_table(u: npt.ArrayLike, n: int) -> MinorTable:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {u.shape}")
    return MinorTable(source=u, order=n, entries=compound_batch(u, n))


def change_basis(f: FermionState, u: npt.ArrayLike) -> FermionState:
    """U ∘ |f>: amplitudes multiplied by the minor table of U"""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (f.p, f.p):
        raise DimMismatch(f"state has {f.p} modes, unitary has shape {u.shape}")
    table = compound_batch(u, f.n)
    return FermionState(p=f.p, n=f.n, amplitudes=table @ f.amplitudes)


# -------- ENTROPY AND OPTIMIZATION --------
def meas_entropy_fermion(f: FermionState) -> float:
    return float(shannon_entropy(f.probabilities))


def evaluate_many_fermion(f: FermionState, xs: npt.ArrayLike) -> RealArray:
    """Entropy of exp(iH(x)) ∘ |f> for each row of xs (p² Hermitian parameters)"""
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    if xs.shape[-1] != f.p * f.p:
        raise ArityMismatch(f"{f.p} modes take {f.p * f.p} parameters")
    us = unitary_service.unitary_exp(unitary_service.hermitians_from_params(f.p, xs))
    amplitudes = compound_batch(us, f.n) @ f.amplitudes
    return np.asarray(shannon_entropy(np.abs(amplitudes) ** 2)).reshape(-1)


def ehmin_fermion(f: FermionState, config: GAConfig) -> EhminResult:
    """Minimal measurement entropy over one-particle basis changes"""
    arity = f.p * f.p
    logger.info("fermionic ehmin: p=%d n=%d (arity %d)", f.p, f.n, arity)
    report = ga_service.search(
        lambda xs: evaluate_many_fermion(f, xs),
        arity,
        config,
        vectorized=True,
        initial=np.zeros((1, arity)),
    )
    return EhminResult.from_report(report)


# -------- SLATER DECOMPOSITION --------
def _antisymmetric(f: FermionState, size: int) -> ComplexArray:
    a = np.zeros((size, size), dtype=np.complex128)
    for (i, j), amplitude in zip(_basis(f.p, 2), f.amplitudes):
        a[i, j] = amplitude
        a[j, i] = -amplitude
    return a


def _canonical_pairs(a: ComplexArray) -> tuple[list[ComplexArray], list[float]]:
    """Orthonormal (u, w) pairs with A conj(u) = -z w, from the spectrum of A A†.

    Eigenvalues of A A† come in equal pairs z²; each eigenvector not yet
    spanned seeds one pair, its partner being -A conj(u) / z.
    """
    try:
        eigenvalues, vectors = np.linalg.eigh(a @ a.conj().T)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"eigendecomposition of A A† failed: {e}") from e

    columns: list[ComplexArray] = []
    weights: list[float] = []
    for index in np.argsort(eigenvalues)[::-1]:
        v = vectors[:, index]
        if columns:
            basis = np.column_stack(columns)
            v = v - basis @ (basis.conj().T @ v)
        residual = float(np.linalg.norm(v))
        if residual < PAIR_SELECTION:
            continue
        u = v / residual
        partner = -a @ u.conj()
        z = float(np.linalg.norm(partner))
        if z < ZERO_WEIGHT:
            break
        columns.extend([u, partner / z])
        weights.append(z)
    return columns, weights


def slater_decompose(f: FermionState) -> tuple[ComplexArray, RealArray]:
    """One-particle unitary U and weights z with U ∘ |f> = Σ_i z_i |2i, 2i+1>.

    Odd p is padded with one empty mode, which is dropped again afterwards.
    """
    if f.n != 2:
        raise NotTwoFermion(f"Slater decomposition needs n = 2, got n = {f.n}")
    padded = f.p % 2 == 1
    size = f.p + 1 if padded else f.p
    a = _antisymmetric(f, size)

    columns, weights = _canonical_pairs(a)
    chosen = np.column_stack(columns) if columns else np.zeros((size, 0))
    if padded:
        kernel = null_space(chosen[: f.p].conj().T) if columns else np.eye(f.p)
        kernel = np.vstack([kernel, np.zeros((1, kernel.shape[1]))])
        last = np.zeros((size, 1))
        last[-1, 0] = 1.0
        kernel = np.hstack([kernel, last])
    else:
        kernel = null_space(chosen.conj().T) if columns else np.eye(size)

    w = np.hstack([chosen, kernel])
    if w.shape != (size, size) or not np.allclose(
        w.conj().T @ w, np.eye(size), atol=SLATER_TOLERANCE
    ):
        raise ConvergenceFailure("canonical basis is not unitary")

    u = w.conj().T[: f.p, : f.p]
    z = np.zeros(f.p // 2)
    z[: len(weights)] = weights[: f.p // 2]
    z = z / np.linalg.norm(z)

    if not is_slater_form(change_basis(f, u), SLATER_TOLERANCE):
        raise ConvergenceFailure("basis change did not reach Slater form")
    return u, z


def is_slater_form(f: FermionState, tol: float) -> bool:
    """True when the weight outside the pair slots (2i, 2i+1) is below tol"""
    if f.n != 2:
        raise NotTwoFermion(f"Slater form is defined for n = 2, got n = {f.n}")
    outside = [a % 2 != 0 or b != a + 1 for a, b in _basis(f.p, 2)]
    return float(np.sum(f.probabilities[outside])) < tol


def slater_entropy(f: FermionState) -> float:
    """Entropy of the squared Slater weights"""
    _, z = slater_decompose(f)
    return float(shannon_entropy(z**2))

def slater_report(f: FermionState) -> SlaterReport:
    u, z = slater_decompose(f)
    entropy = float(shannon_entropy(z**2))
    logger.info("slater decomposition: p=%d weights=%s", f.p, np.round(z, 6))
    return SlaterReport(
        weights=z.tolist(),
        entropy=entropy,
        unitary=[[(float(x.real), float(x.imag)) for x in row] for row in u],
    )
