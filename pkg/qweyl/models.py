"""
Pydantic schemas for job requests and every report the toolkit emits.
"""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from qweyl.services.scalars import Scalar

COMMANDS = ("build-algebra", "local-weyl", "irreducible", "tensor-check", "verify", "serve")
SUITES = ("presentation", "garland", "clifford", "prop4a", "tensor")


# ---------------------------------------------------------------------------
# Dumps
# ---------------------------------------------------------------------------
class SpaceDims(BaseModel):
    even: int
    odd: int


class CharacterEntry(BaseModel):
    weight: List[int]
    even: int
    odd: int


class StructureConstant(BaseModel):
    left: str
    right: str
    terms: Dict[str, str]


class CoeffAlgebraDump(BaseModel):
    name: str
    labels: List[str]
    unit: List[str]
    # table[i][j] is the product b_i * b_j written in the basis
    table: List[List[List[str]]]


class AlgebraDump(BaseModel):
    name: str
    labels: List[str]
    parities: List[int]
    dims: SpaceDims
    structure: List[StructureConstant]
    coefficient_algebra: Optional[CoeffAlgebraDump] = None


class BasisEntry(BaseModel):
    label: str
    weight: List[int]
    parity: int


class ActionEntry(BaseModel):
    generator: str
    # (row, column, scalar string)
    entries: List[Tuple[int, int, str]]


class ModuleDump(BaseModel):
    highest_weight: List[int]
    dims: SpaceDims
    basis: List[BasisEntry]
    actions: List[ActionEntry]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------
class RelationResult(BaseModel):
    relation: str
    indices: List[int] = Field(default_factory=list)
    passed: bool
    case: Optional[str] = None
    detail: Optional[str] = None


class PresentationReport(BaseModel):
    n: int
    results: List[RelationResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[RelationResult]:
        return [r for r in self.results if not r.passed]


class GlobalRelationsReport(BaseModel):
    highest_weight: List[int]
    results: List[RelationResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[RelationResult]:
        return [r for r in self.results if not r.passed]


class CertificateInfo(BaseModel):
    depth: int
    band: Tuple[int, int]
    attempts: int
    certified: bool


class LocalWeylReport(BaseModel):
    highest_weight: List[int]
    dims: SpaceDims
    character: List[CharacterEntry]
    certificate: Optional[CertificateInfo] = None
    module: Optional[ModuleDump] = None


class IdealReport(BaseModel):
    basis: List[List[str]]
    codim: int
    n_psi: int
    power_codim: int
    annihilates_top: bool
    # intersection over positive roots alpha of {a : (y_alpha (x) a) kills the top}
    root_meet_codim: int
    root_meet_kills_odd_cartan: bool


class SpanningReport(BaseModel):
    root: List[int]
    bound: int
    max_exponent: int
    strict_holds: bool
    inclusive_holds: bool


class GarlandReport(BaseModel):
    r: int
    root: List[int]
    element: List[str]
    divided_power_holds: bool
    literal_holds: bool
    # normal-form terms left outside U (n+ (x) A) by the divided-power reading
    residual_terms: int


class IsoReport(BaseModel):
    kind: Literal["iso", "iso_after_pi", "not_iso"]
    witness_shape: Optional[Tuple[int, int]] = None


class TensorTheoremReport(BaseModel):
    branch: Literal["single", "double"]
    comaximal: bool
    n_psi: Tuple[int, int]
    characters: Dict[str, List[CharacterEntry]]
    isomorphism: IsoReport
    hat_tensor_matches: Optional[bool] = None


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SuiteResult(BaseModel):
    suite: str
    checks: List[CheckResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class ErrorPayload(BaseModel):
    error: str
    message: str
    exit_code: int


# ---------------------------------------------------------------------------
# Jobs
# ---------------------------------------------------------------------------
class JobSpec(BaseModel):
    command: Literal["build-algebra", "local-weyl", "irreducible", "tensor-check", "verify", "serve"]
    n: int = Field(default=2, ge=2)
    coeff: str = "C"
    lam: Optional[List[int]] = None
    lam2: Optional[List[int]] = None
    psi: Optional[List[List[str]]] = None
    psi2: Optional[List[List[str]]] = None
    point: int = Field(default=0, ge=0)
    point2: Optional[int] = Field(default=None, ge=0)
    depth_cap: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    out: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    suite: Literal["presentation", "garland", "clifford", "prop4a", "tensor", "all"] = "all"
    jobs: int = Field(default=1, ge=1)
    n_values: Optional[List[int]] = None

    @field_validator("psi", "psi2", mode="before")
    @classmethod
    def _stringify(cls, value):
        if value is None:
            return value
        return [[str(x) for x in row] for row in value]

    @field_validator("psi", "psi2")
    @classmethod
    def _entries_are_scalars(cls, value: Optional[List[List[str]]]):
        if value is None:
            return value
        if not value or any(len(row) != len(value[0]) for row in value):
            raise ValueError("psi must be a non-empty rectangular matrix")
        for row in value:
            for entry in row:
                Scalar.parse(entry)
        return value

    @model_validator(mode="after")
    def _weights_fit_rank(self) -> "JobSpec":
        for name in ("lam", "lam2", "psi", "psi2"):
            value = getattr(self, name)
            if value is not None and len(value) != self.n:
                raise ValueError(f"{name} needs {self.n} rows/coordinates, got {len(value)}")
        return self
