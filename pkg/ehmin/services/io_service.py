"""State files, fermion files and convergence traces on disk.

State files are JSON objects {"dims": [...], "amplitudes": [[re, im], ...]}
and fermion files {"p": p, "n": n, "amplitudes": [[re, im], ...]}, amplitudes
in the package's basis order. Traces are JSON lines {epoch, island, best, mean}.
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

import numpy as np
import pandas as pd
from json_repair import repair_json
from pydantic import ValidationError

from ehmin.models.domain import FermionState, PureState
from ehmin.models.errors import EhminError, StateFileError
from ehmin.models.schemas import (
    FermionFile,
    StateFile,
    TraceRecord,
    trace_dataframe,
)
from ehmin.services.fermion_service import make_fermion_state
from ehmin.services.state_service import make_state

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def parse_json(text: str) -> Any:
    """Parse JSON, falling back to json_repair for hand-edited input"""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        logger.warning("input is not valid JSON, attempting repair")
        try:
            return json.loads(repair_json(text))
        except Exception as e:
            raise StateFileError(f"could not parse JSON: {e}") from e


def _read(path: PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StateFileError(f"cannot read {path}: {e}") from e
    return parse_json(text)


def _write(path: PathLike, text: str) -> None:
    try:
        Path(path).write_text(text + "\n", encoding="utf-8")
    except OSError as e:
        raise StateFileError(f"cannot write {path}: {e}") from e
    logger.info("wrote %s", path)


def _complex(pairs: list[tuple[float, float]]) -> np.ndarray:
    values = np.array(pairs, dtype=np.float64).reshape(-1, 2)
    return values[:, 0] + 1j * values[:, 1]


def _pairs(amplitudes: np.ndarray) -> list[tuple[float, float]]:
    return [(float(a.real), float(a.imag)) for a in amplitudes]


# -------- QUDIT STATES --------
def state_from_schema(data: StateFile) -> PureState:
    return make_state(data.dims, _complex(data.amplitudes))


def state_to_schema(s: PureState) -> StateFile:
    return StateFile(dims=list(s.dims), amplitudes=_pairs(s.amplitudes))


def load_state(path: PathLike) -> PureState:
    try:
        return state_from_schema(StateFile.model_validate(_read(path)))
    except ValidationError as e:
        raise StateFileError(f"{path} is not a state file: {e}") from e
    except StateFileError:
        raise
    except EhminError as e:
        raise StateFileError(f"{path} does not hold a valid state: {e}") from e


def dump_state(s: PureState) -> str:
    return state_to_schema(s).model_dump_json(indent=2)


def write_state(s: PureState, path: PathLike) -> None:
    _write(path, dump_state(s))


# -------- FERMIONIC STATES --------
def fermion_from_schema(data: FermionFile) -> FermionState:
    return make_fermion_state(data.p, data.n, _complex(data.amplitudes))


def fermion_to_schema(f: FermionState) -> FermionFile:
    return FermionFile(p=f.p, n=f.n, amplitudes=_pairs(f.amplitudes))


def load_fermion(path: PathLike) -> FermionState:
    try:
        return fermion_from_schema(FermionFile.model_validate(_read(path)))
    except ValidationError as e:
        raise StateFileError(f"{path} is not a fermion file: {e}") from e
    except StateFileError:
        raise
    except EhminError as e:
        raise StateFileError(f"{path} does not hold a valid fermion state: {e}") from e


def dump_fermion(f: FermionState) -> str:
    return fermion_to_schema(f).model_dump_json(indent=2)


def write_fermion(f: FermionState, path: PathLike) -> None:
    _write(path, dump_fermion(f))


# -------- TRACES --------
def write_trace(records: list[TraceRecord], path: PathLike) -> None:
    """One JSON object per line: epoch, island, best, mean"""
    frame = trace_dataframe(records)
    frame.to_json(path, orient="records", lines=True, double_precision=15)
    logger.info("wrote %d trace records to %s", len(frame), path)


def read_trace(path: PathLike) -> pd.DataFrame:
    try:
        return pd.read_json(path, orient="records", lines=True)
    except (OSError, ValueError) as e:
        raise StateFileError(f"cannot read trace {path}: {e}") from e
