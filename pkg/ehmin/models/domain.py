"""Numeric value types shared by the services.

All types are frozen and their arrays are flagged read-only, so a value built
once can be handed to any number of concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np
import numpy.typing as npt

ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]


def _frozen(array: npt.ArrayLike, dtype: type = np.complex128) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


# -------- QUDIT STATES --------
@dataclass(frozen=True)
class PureState:
    """Amplitudes over the computational basis, row-major, subsystem 0 first"""

    dims: tuple[int, ...]
    amplitudes: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    @property
    def dimension(self) -> int:
        return prod(self.dims)

    @property
    def probabilities(self) -> RealArray:
        return np.abs(self.amplitudes) ** 2

    def as_tensor(self) -> ComplexArray:
        """Amplitudes viewed with one axis per subsystem"""
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    dims: tuple[int, ...]
    entries: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def dimension(self) -> int:
        return prod(self.dims)


# -------- FERMIONIC STATES --------
@dataclass(frozen=True)
class FermionState:
    """n fermions over p modes; amplitudes follow lexicographic mode tuples"""

    p: int
    n: int
    amplitudes: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))

    @property
    def probabilities(self) -> RealArray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class MinorTable:
    """All order-n minors of a p x p matrix, rows and columns lexicographic"""

    source: ComplexArray = field(repr=False)
    order: int
    entries: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", _frozen(self.source))
        object.__setattr__(self, "entries", _frozen(self.entries))
