from __future__ import annotations

from enum import Enum
from typing import Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ehmin import config


# -------- ENUMS --------
class StopReason(str, Enum):
    max_epochs = "max_epochs"
    stagnation = "stagnation"


class OracleKind(str, Enum):
    bipartite = "bipartite"
    ghz = "ghz"
    w = "w"


# -------- GENETIC ALGORITHM SCHEMAS --------
class GAConfig(BaseModel):
    """Hyperparameters of the island genetic algorithm"""

    model_config = ConfigDict(frozen=True)

    n_gen: int = Field(default=config.GA_N_GEN, ge=1)
    n_population: int = Field(default=config.GA_N_POPULATION, ge=4)
    n_bad: int = Field(default=config.GA_N_BAD, ge=0)
    p_mut: Optional[float] = Field(default=config.GA_P_MUT, ge=0.0, le=1.0)
    m_mut: float = Field(default=config.GA_M_MUT, ge=0.0)
    m_init: float = Field(default=config.GA_M_INIT, gt=0.0)
    n_epochs: int = Field(default=config.GA_N_EPOCHS, ge=0)
    epsilon: float = Field(default=config.GA_EPSILON, gt=0.0)
    n_term: int = Field(default=config.GA_N_TERM, ge=1)
    n_islands: int = Field(default=config.GA_N_ISLANDS, ge=1)
    p_mig: float = Field(default=config.GA_P_MIG, ge=0.0, le=1.0)
    seed: int = Field(default=config.GA_SEED, ge=0)
    elitism: bool = True
    n_workers: int = Field(default=config.GA_N_WORKERS, ge=1)
    n_rounds: int = Field(default=config.GA_N_ROUNDS, ge=1)
    shrink: float = Field(default=config.GA_SHRINK, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def check_reproduction_pool(self) -> GAConfig:
        if self.n_bad >= self.n_population:
            raise ValueError(
                f"n_bad ({self.n_bad}) must be smaller than "
                f"n_population ({self.n_population})"
            )
        return self

    def mutation_rate(self, length: int) -> float:
        """Per-gene mutation probability for chromosomes of ``length`` genes"""
        if self.p_mut is not None:
            return self.p_mut
        expected = config.GA_MUTATIONS_PER_CHILD / max(length, 1)
        return min(config.GA_P_MUT_CAP, expected)


class TraceRecord(BaseModel):
    epoch: int
    island: int
    best: float
    mean: float


TRACE_COLUMNS = ["epoch", "island", "best", "mean"]


def trace_dataframe(records: list[TraceRecord]) -> pd.DataFrame:
    return pd.DataFrame(
        [record.model_dump() for record in records], columns=TRACE_COLUMNS
    )


class OptimizationReport(BaseModel):
    best_value: float
    best_params: list[float]
    best_genes: list[float]
    epochs: int
    evaluations: int
    n_islands: int
    seed: int
    stop_reason: StopReason
    trace: list[TraceRecord] = []

    def trace_frame(self) -> pd.DataFrame:
        """Convergence trace as a DataFrame with columns epoch, island, best, mean"""
        return trace_dataframe(self.trace)


# -------- RESULT SCHEMAS --------
class EhminResult(BaseModel):
    value: float = Field(ge=0.0)
    params: list[float]
    epochs: int
    evaluations: int
    islands: int
    seed: int
    stop_reason: StopReason
    trace: list[TraceRecord] = []

    @classmethod
    def from_report(cls, report: OptimizationReport) -> EhminResult:
        return cls(
            value=max(report.best_value, 0.0),
            params=report.best_params,
            epochs=report.epochs,
            evaluations=report.evaluations,
            islands=report.n_islands,
            seed=report.seed,
            stop_reason=report.stop_reason,
            trace=report.trace,
        )


class VerifyReport(BaseModel):
    oracle: OracleKind
    ehmin: float
    oracle_value: float
    gap: float


class SlaterReport(BaseModel):
    weights: list[float]
    entropy: float
    unitary: list[list[tuple[float, float]]]


class EntropyReport(BaseModel):
    meas_entropy: float
    von_neumann_entropy: Optional[float] = None
    schmidt_coefficients: Optional[list[float]] = None


# -------- STATE FILE SCHEMAS --------
class StateFile(BaseModel):
    dims: list[int] = Field(min_length=1)
    amplitudes: list[tuple[float, float]] = Field(min_length=1)

    @field_validator("dims")
    @classmethod
    def check_dims(cls, dims: list[int]) -> list[int]:
        if any(d < 2 for d in dims):
            raise ValueError("every subsystem dimension must be at least 2")
        return dims


class FermionFile(BaseModel):
    p: int = Field(ge=1)
    n: int = Field(ge=1)
    amplitudes: list[tuple[float, float]] = Field(min_length=1)


# -------- REQUEST SCHEMAS --------
class StateRequest(BaseModel):
    state: StateFile
    config: Optional[GAConfig] = None


class FermionRequest(BaseModel):
    state: FermionFile
    config: Optional[GAConfig] = None


class RandomStateRequest(BaseModel):
    dims: list[int] = Field(min_length=1)
    seed: int = Field(default=0, ge=0)
