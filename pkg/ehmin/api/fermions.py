# type: ignore

from fastapi import APIRouter

from ehmin.api.states import http_error
from ehmin.models.errors import EhminError
from ehmin.models.schemas import EhminResult, FermionRequest, GAConfig, SlaterReport
from ehmin.services import fermion_service, io_service

router = APIRouter()


@router.post("/ehmin", response_model=EhminResult, response_model_exclude={"trace"})
def compute_ehmin(request: FermionRequest):
    try:
        f = io_service.fermion_from_schema(request.state)
        return fermion_service.ehmin_fermion(f, request.config or GAConfig())
    except EhminError as e:
        raise http_error(e) from e


@router.post("/slater", response_model=SlaterReport)
def slater(request: FermionRequest):
    try:
        f = io_service.fermion_from_schema(request.state)
        return fermion_service.slater_report(f)
    except EhminError as e:
        raise http_error(e) from e
