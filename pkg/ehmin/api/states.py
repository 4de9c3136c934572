# type: ignore

from fastapi import APIRouter, HTTPException, status

from ehmin.models.errors import EhminError, InvalidConfig
from ehmin.models.schemas import (
    EhminResult,
    EntropyReport,
    GAConfig,
    RandomStateRequest,
    StateFile,
    StateRequest,
    VerifyReport,
)
from ehmin.services import (
    io_service,
    objective_service,
    oracle_service,
    state_service,
)

router = APIRouter()


def http_error(e: EhminError) -> HTTPException:
    if isinstance(e, InvalidConfig):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    return HTTPException(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e)
    )


@router.post("/ehmin", response_model=EhminResult, response_model_exclude={"trace"})
def compute_ehmin(request: StateRequest):
    try:
        s = io_service.state_from_schema(request.state)
        return objective_service.ehmin(s, request.config or GAConfig())
    except EhminError as e:
        raise http_error(e) from e


@router.post("/verify", response_model=VerifyReport)
def verify_state(request: StateRequest):
    try:
        s = io_service.state_from_schema(request.state)
        return oracle_service.verify(s, request.config or GAConfig())
    except EhminError as e:
        raise http_error(e) from e


@router.post("/random", response_model=StateFile)
def generate_random_state(request: RandomStateRequest):
    try:
        s = state_service.random_state(request.dims, request.seed)
    except EhminError as e:
        raise http_error(e) from e
    return io_service.state_to_schema(s)


@router.post("/entropy", response_model=EntropyReport)
def entropy(request: StateRequest):
    try:
        s = io_service.state_from_schema(request.state)
        return oracle_service.entropy_report(s)
    except EhminError as e:
        raise http_error(e) from e
