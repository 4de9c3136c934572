import numpy as np

from ehmin.models.domain import FermionState, PureState

LN2 = float(np.log(2))
LN3 = float(np.log(3))


def pairs(amplitudes: np.ndarray) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in amplitudes]


def state_payload(s: PureState) -> dict:
    return {"dims": list(s.dims), "amplitudes": pairs(s.amplitudes)}


def fermion_payload(f: FermionState) -> dict:
    return {"p": f.p, "n": f.n, "amplitudes": pairs(f.amplitudes)}
