"""
Module endpoints: local Weyl modules and their irreducible quotients.
"""

from typing import List, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field, ValidationError

from qweyl.api.errors import http_error
from qweyl.core.errors import QWeylError
from qweyl.data_access.artifacts import module_report
from qweyl.ingestion.job_loader import job_weights
from qweyl.models import JobSpec, LocalWeylReport
from qweyl.services.weylmod import irreducible_quotient, local_weyl

router = APIRouter(prefix="/api/modules", tags=["modules"])


class ModuleRequest(BaseModel):
    n: int = Field(default=2, ge=2)
    coeff: str = "C"
    lam: Optional[List[int]] = None
    psi: Optional[List[List[str]]] = None
    point: int = Field(default=0, ge=0)
    include_module: bool = False


def _job(command: str, request: ModuleRequest) -> JobSpec:
    try:
        return JobSpec(command=command, **request.model_dump(exclude={"include_module"}))
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail=exc.errors(include_url=False, include_context=False))


@router.post("/local-weyl", response_model=LocalWeylReport)
def post_local_weyl(request: ModuleRequest) -> LocalWeylReport:
    """Character and stabilization certificate of W_loc(psi)."""
    job = _job("local-weyl", request)
    try:
        (psi,) = job_weights(job)
        return module_report(local_weyl(psi), include_module=request.include_module)
    except QWeylError as exc:
        raise http_error(exc)


@router.post("/irreducible", response_model=LocalWeylReport)
def post_irreducible(request: ModuleRequest) -> LocalWeylReport:
    """Character of the irreducible quotient of W_loc(psi)."""
    job = _job("irreducible", request)
    try:
        (psi,) = job_weights(job)
        return module_report(irreducible_quotient(local_weyl(psi)), include_module=request.include_module)
    except QWeylError as exc:
        raise http_error(exc)
