"""
Turn command-line and HTTP job inputs into domain objects.

    --coeff   C | poly:N | sum:X+Y[+Z...]     (sums fold to the left)
    --lambda  comma separated integers
    --psi     JSON file holding an n x dim(A) matrix of scalar strings,
              columns in the declared basis order of A (unit first)
"""

from __future__ import annotations

import json
import logging
import re
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Sequence

from qweyl.core.errors import InvalidJobError, QWeylError
from qweyl.models import JobSpec
from qweyl.services.clifford import MapWeight
from qweyl.services.coeff import CommAlgebra, direct_sum, truncated_poly
from qweyl.services.scalars import Scalar
from qweyl.services.weylmod import field_algebra

logger = logging.getLogger(__name__)

POLY_PATTERN = re.compile(r"poly:(\d+)")


def _summand(text: str) -> CommAlgebra:
    text = text.strip()
    if text == "C":
        return field_algebra()
    match = POLY_PATTERN.fullmatch(text)
    if match:
        degree = int(match.group(1))
        return field_algebra() if degree == 1 else _poly(degree)
    raise InvalidJobError(f"Unknown coefficient algebra {text!r}; expected C, poly:N or sum:X+Y")


@lru_cache(maxsize=None)
def _poly(degree: int) -> CommAlgebra:
    return truncated_poly(degree)


@lru_cache(maxsize=None)
def load_coeff(spec: str) -> CommAlgebra:
    """
    Parse a coefficient spec.  Results are cached so two weights parsed from
    the same spec share one algebra (and one current algebra context).
    """
    spec = spec.strip()
    if not spec.startswith("sum:"):
        return _summand(spec)
    parts = [p for p in spec[len("sum:"):].split("+")]
    if len(parts) < 2 or not all(p.strip() for p in parts):
        raise InvalidJobError(f"sum needs at least two summands: {spec!r}")
    algebra = _summand(parts[0])
    for part in parts[1:]:
        algebra = direct_sum(algebra, _summand(part))
    logger.debug("coefficient algebra %s, dim %d", algebra.name, algebra.dim)
    return algebra


def parse_lambda(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise InvalidJobError(f"lambda must be comma separated integers, got {text!r}") from exc


def load_psi(path: Optional[str]) -> Optional[List[List[str]]]:
    if path is None:
        return None
    file = Path(path)
    if not file.exists():
        raise InvalidJobError(f"psi file not found: {file}")
    try:
        data = json.loads(file.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidJobError(f"psi file {file} is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InvalidJobError(f"psi file {file} must hold a matrix (list of rows)")
    return [[str(x) for x in row] for row in data]


def _psi_from(
    algebra: CommAlgebra, n: int, lam: Optional[Sequence[int]], values: Optional[Sequence[Sequence[str]]], point: int
) -> MapWeight:
    try:
        if values is not None:
            if len(values) != n:
                raise InvalidJobError(f"psi needs {n} rows, got {len(values)}")
            return MapWeight.of(algebra, [[Scalar.parse(x) for x in row] for row in values])
        if lam is None:
            raise InvalidJobError("either --lambda or --psi is required")
        return MapWeight.from_lambda(lam, algebra, point)
    except QWeylError:
        raise
    except ValueError as exc:
        raise InvalidJobError(str(exc)) from exc


def job_weights(job: JobSpec) -> List[MapWeight]:
    """The one or two map weights a job describes, over a shared algebra."""
    algebra = load_coeff(job.coeff)
    weights = [_psi_from(algebra, job.n, job.lam, job.psi, job.point)]
    if job.lam2 is not None or job.psi2 is not None:
        point2 = job.point if job.point2 is None else job.point2
        weights.append(_psi_from(algebra, job.n, job.lam2, job.psi2, point2))
    return weights
