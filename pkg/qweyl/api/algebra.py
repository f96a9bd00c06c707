"""
Algebra endpoints: structure constants of q(n) and q(n) (x) A.
"""

from typing import Optional

from fastapi import APIRouter, Query

from qweyl.api.errors import http_error
from qweyl.core.errors import QWeylError
from qweyl.data_access.artifacts import dump_algebra
from qweyl.ingestion.job_loader import load_coeff
from qweyl.models import AlgebraDump
from qweyl.services.liesuper import build_q, current_algebra

router = APIRouter(prefix="/api/algebra", tags=["algebra"])


@router.get("/q/{n}", response_model=AlgebraDump)
def get_algebra(n: int, coeff: Optional[str] = Query(default=None, description="C, poly:N or sum:X+Y")) -> AlgebraDump:
    """
    Basis, parities and structure constants of q(n), or of q(n) (x) A when
    a coefficient algebra is given.
    """
    try:
        q, _ = build_q(n)
        algebra = q if coeff is None else current_algebra(q, load_coeff(coeff))
        return dump_algebra(algebra)
    except QWeylError as exc:
        raise http_error(exc)
