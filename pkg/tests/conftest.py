import json
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from ehmin.models.domain import PureState
from ehmin.models.schemas import GAConfig
from ehmin.services import state_service


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def fast_config() -> GAConfig:
    """Small GA run for states whose minimum sits at the identity"""
    return GAConfig(
        n_population=20, n_bad=4, n_epochs=60, n_term=15, n_islands=2, seed=0
    )


@pytest.fixture
def bell() -> PureState:
    return state_service.make_state([2, 2], np.array([1, 0, 0, 1]) / np.sqrt(2))


@pytest.fixture
def ghz3() -> PureState:
    return state_service.ghz_state(2, 3, np.array([1, 1]) / np.sqrt(2))


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, object], Path]:
    def write(name: str, payload: object) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write