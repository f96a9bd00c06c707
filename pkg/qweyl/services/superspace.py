"""
Supervector spaces: parity per basis label, parity change, Koszul signs,
graded maps, and a solver for graded intertwiners.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from qweyl.core.errors import DimensionMismatchError
from qweyl.services.linalg import Matrix, SparseVector, kernel_rows
from qweyl.services.scalars import ONE

logger = logging.getLogger(__name__)

EVEN, ODD = 0, 1


def koszul_sign(x_parity: int, m_parity: int) -> int:
    """(-1)^{|x||m|}: the sign picked up when x moves past m."""
    return -1 if (x_parity & m_parity) % 2 else 1


@dataclass(frozen=True)
class SuperSpace:
    labels: Tuple[Hashable, ...]
    parities: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.parities):
            raise DimensionMismatchError("One parity per label is required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("Basis labels must be distinct")
        if any(p not in (EVEN, ODD) for p in self.parities):
            raise ValueError("Parities must be 0 (even) or 1 (odd)")

    @classmethod
    def of_dims(cls, even: int, odd: int, prefix: str = "v") -> "SuperSpace":
        labels = tuple(f"{prefix}{k}" for k in range(even + odd))
        return cls(labels, (EVEN,) * even + (ODD,) * odd)

    @property
    def dim(self) -> Tuple[int, int]:
        odd = sum(self.parities)
        return len(self.parities) - odd, odd

    @property
    def total_dim(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        return self.labels.index(label)

    def parity_of(self, label: Hashable) -> int:
        return self.parities[self.index(label)]


def parity_shift(v: SuperSpace) -> SuperSpace:
    return SuperSpace(v.labels, tuple(1 - p for p in v.parities))


@dataclass(frozen=True)
class TensorSpace:
    """V (x) W with basis the ordered pairs; sign() is the Koszul rule."""

    left: SuperSpace
    right: SuperSpace
    space: SuperSpace

    @staticmethod
    def sign(x_parity: int, m_parity: int) -> int:
        return koszul_sign(x_parity, m_parity)

    def pair_index(self, i: int, j: int) -> int:
        return i * self.right.total_dim + j


def tensor_space(v: SuperSpace, w: SuperSpace) -> TensorSpace:
    labels = []
    parities = []
    for a, pa in zip(v.labels, v.parities):
        for b, pb in zip(w.labels, w.parities):
            labels.append((a, b))
            parities.append((pa + pb) % 2)
    return TensorSpace(v, w, SuperSpace(tuple(labels), tuple(parities)))


def direct_sum_space(v: SuperSpace, w: SuperSpace) -> SuperSpace:
    labels = tuple((0, a) for a in v.labels) + tuple((1, b) for b in w.labels)
    return SuperSpace(labels, v.parities + w.parities)


@dataclass(frozen=True, eq=False)
class GradedMap:
    source: SuperSpace
    target: SuperSpace
    matrix: Matrix
    degree: int

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.total_dim, self.source.total_dim):
            raise DimensionMismatchError(
                f"Matrix {self.matrix.shape} does not map {self.source.dim} to {self.target.dim}"
            )
        for (r, c), _ in self.matrix.items():
            if (self.target.parities[r] - self.source.parities[c]) % 2 != self.degree:
                raise ValueError(f"Entry ({r},{c}) breaks degree {self.degree}")

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other."""
        return GradedMap(other.source, self.target, self.matrix @ other.matrix, (self.degree + other.degree) % 2)


def intertwiners(
    source: SuperSpace,
    target: SuperSpace,
    source_actions: Sequence[Matrix],
    target_actions: Sequence[Matrix],
    action_parities: Sequence[int],
    degree: int = EVEN,
    allowed: Optional[Callable[[int, int], bool]] = None,
) -> List[Matrix]:
    """
    Basis of graded maps T of the given degree with

        T . S_x = (-1)^{degree |x|} R_x . T     for every x,

    where S_x, R_x are the source and target operators.  ``allowed(i, k)``
    restricts which entries T[i, k] may be nonzero (weight compatibility).
    """
    if not (len(source_actions) == len(target_actions) == len(action_parities)):
        raise DimensionMismatchError("One source and target operator per parity")

    unknowns: Dict[Tuple[int, int], int] = {}
    for i, pi in enumerate(target.parities):
        for k, pk in enumerate(source.parities):
            if (pi - pk) % 2 == degree and (allowed is None or allowed(i, k)):
                unknowns[(i, k)] = len(unknowns)
    if not unknowns:
        return []

    equations: Dict[Tuple[int, int, int], SparseVector] = {}

    def _add(key: Tuple[int, int, int], unknown: int, value) -> None:
        row = equations.setdefault(key, {})
        total = row.get(unknown)
        total = value if total is None else total + value
        if total:
            row[unknown] = total
        else:
            row.pop(unknown, None)

    for x, (s_x, r_x, px) in enumerate(zip(source_actions, target_actions, action_parities)):
        sign = -ONE if (degree * px) % 2 else ONE
        for (i, j), u in unknowns.items():
            # (T S_x)[i, k] gets T[i, j] * S_x[j, k]
            for k, value in s_x.row(j).items():
                _add((x, i, k), u, value)
            # (R_x T)[l, j] gets R_x[l, i] * T[i, j]
            for l, value in r_x.column(i).items():
                _add((x, l, j), u, -sign * value)

    rows = [row for row in equations.values() if row]
    solutions = kernel_rows(rows, len(unknowns))
    logger.debug("intertwiner solve: %d unknowns, %d equations, %d solutions", len(unknowns), len(rows), len(solutions))

    positions = {u: key for key, u in unknowns.items()}
    return [
        Matrix(target.total_dim, source.total_dim, {positions[u]: value for u, value in sol.items()})
        for sol in solutions
    ]
