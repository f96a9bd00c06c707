"""
Finite-dimensional commutative unital coefficient algebras and their ideals.

Supports are never materialized; disjoint support of two ideals is tested as
comaximality I + J = A, which is plain linear algebra here.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from qweyl.core.errors import AlgebraMismatchError, InvalidAlgebraError
from qweyl.services.linalg import Matrix, SparseVector, Subspace, kernel, vec_axpy
from qweyl.services.scalars import ONE, ZERO, Coercible, Scalar

logger = logging.getLogger(__name__)

# An augmentation A -> C, stored as its values on the basis
Point = Tuple[Scalar, ...]


class CommAlgebra:
    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        table: Mapping[Tuple[int, int], Mapping[int, Coercible]],
        unit: Mapping[int, Coercible],
        points: Sequence[Sequence[Coercible]] = (),
    ) -> None:
        self.name = name
        self.labels = tuple(labels)
        self.table: Dict[Tuple[int, int], SparseVector] = {}
        for key, v in table.items():
            cleaned = {k: Scalar.of(c) for k, c in v.items() if Scalar.of(c)}
            if cleaned:
                self.table[key] = cleaned
        self.unit: SparseVector = {k: Scalar.of(c) for k, c in unit.items() if Scalar.of(c)}
        self.points: Tuple[Point, ...] = tuple(tuple(Scalar.of(x) for x in p) for p in points)
        self.validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidAlgebraError(f"{label!r} is not a basis element of {self.name}") from None

    def multiply_basis(self, i: int, j: int) -> SparseVector:
        return dict(self.table.get((i, j), {}))

    def multiply(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> SparseVector:
        out: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                product = self.table.get((i, j))
                if product:
                    out = vec_axpy(out, a * b, product)
        return out

    def power(self, u: Mapping[int, Scalar], k: int) -> SparseVector:
        out = dict(self.unit)
        for _ in range(k):
            out = self.multiply(out, u)
        return out

    def element(self, label: str) -> SparseVector:
        return {self.index(label): ONE}

    def evaluate(self, point: int, v: Mapping[int, Scalar]) -> Scalar:
        """Value of the augmentation ``points[point]`` on v."""
        values = self.points[point]
        total = ZERO
        for i, c in v.items():
            total = total + c * values[i]
        return total

    def describe(self, v: Mapping[int, Scalar]) -> str:
        if not v:
            return "0"
        return " + ".join(f"({v[i]})*{self.labels[i]}" for i in sorted(v))

    def validate(self) -> None:
        m = self.dim
        if m == 0:
            raise InvalidAlgebraError("Coefficient algebra must have positive dimension")
        for (i, j), v in self.table.items():
            if not (0 <= i < m and 0 <= j < m) or any(not 0 <= k < m for k in v):
                raise InvalidAlgebraError(f"Table entry ({i},{j}) is out of range for dimension {m}")
        basis = [{i: ONE} for i in range(m)]
        for i, j in itertools.combinations(range(m), 2):
            if self.multiply_basis(i, j) != self.multiply_basis(j, i):
                raise InvalidAlgebraError(f"{self.name} is not commutative at ({self.labels[i]}, {self.labels[j]})")
        for i, j, k in itertools.product(range(m), repeat=3):
            left = self.multiply(self.multiply_basis(i, j), basis[k])
            right = self.multiply(basis[i], self.multiply_basis(j, k))
            if left != right:
                raise InvalidAlgebraError(
                    f"{self.name} is not associative at ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                )
        for i in range(m):
            if self.multiply(self.unit, basis[i]) != basis[i]:
                raise InvalidAlgebraError(f"{self.name}: the unit does not fix {self.labels[i]}")
        for p, values in enumerate(self.points):
            if len(values) != m:
                raise InvalidAlgebraError(f"Point {p} has {len(values)} values, expected {m}")
            if self.evaluate(p, self.unit) != ONE:
                raise InvalidAlgebraError(f"Point {p} does not send 1 to 1")
            for i, j in itertools.product(range(m), repeat=2):
                if self.evaluate(p, self.multiply_basis(i, j)) != values[i] * values[j]:
                    raise InvalidAlgebraError(f"Point {p} is not multiplicative")

    def __repr__(self) -> str:
        return f"CommAlgebra({self.name!r}, dim={self.dim})"


# ======================================================================
# Constructors
# ======================================================================
def truncated_poly(n: int) -> CommAlgebra:
    """C[t]/(t^n) with basis 1, t, ..., t^(n-1); the single point is t = 0."""
    if n < 1:
        raise InvalidAlgebraError(f"Truncation degree must be >= 1, got {n}")
    labels = ["1", "t"] + [f"t^{k}" for k in range(2, n)]
    table = {(i, j): {i + j: ONE} for i in range(n) for j in range(n) if i + j < n}
    name = "C" if n == 1 else f"C[t]/(t^{n})"
    return CommAlgebra(name, labels[:n], table, {0: ONE}, points=[[ONE] + [ZERO] * (n - 1)])


def complex_numbers() -> CommAlgebra:
    return truncated_poly(1)


def direct_sum(a: CommAlgebra, b: CommAlgebra) -> CommAlgebra:
    """A + B with componentwise product; points of both factors survive."""
    shift = a.dim
    labels = [f"{x}[0]" for x in a.labels] + [f"{x}[1]" for x in b.labels]
    table: Dict[Tuple[int, int], SparseVector] = dict(a.table)
    for (i, j), v in b.table.items():
        table[(i + shift, j + shift)] = {k + shift: c for k, c in v.items()}
    unit = dict(a.unit)
    unit.update({k + shift: c for k, c in b.unit.items()})
    points = [list(p) + [ZERO] * b.dim for p in a.points] + [[ZERO] * a.dim + list(p) for p in b.points]
    return CommAlgebra(f"({a.name}+{b.name})", labels, table, unit, points)


def from_table(
    name: str,
    labels: Sequence[str],
    table: Sequence[Sequence[Mapping[int, Coercible]]],
    unit: Mapping[int, Coercible],
    points: Sequence[Sequence[Coercible]] = (),
) -> CommAlgebra:
    """Build from a nested table where table[i][j] is b_i * b_j."""
    if len(table) != len(labels) or any(len(row) != len(labels) for row in table):
        raise InvalidAlgebraError("Multiplication table must be square with one row per basis label")
    flat = {(i, j): entry for i, row in enumerate(table) for j, entry in enumerate(row)}
    return CommAlgebra(name, labels, flat, unit, points)


def make_algebra(kind: str, *args) -> CommAlgebra:
    if kind == "truncated_poly":
        return truncated_poly(*args)
    if kind == "direct_sum":
        return direct_sum(*args)
    if kind == "table":
        return from_table(*args)
    raise InvalidAlgebraError(f"Unknown algebra kind {kind!r}")


# ======================================================================
# Ideals
# ======================================================================
@dataclass(frozen=True, eq=False)
class IdealSubspace:
    algebra: CommAlgebra
    space: Subspace

    def __post_init__(self) -> None:
        if self.space.ambient_dim != self.algebra.dim:
            raise AlgebraMismatchError("Ideal space does not live in the algebra")
        for i in range(self.algebra.dim):
            for row in self.space.rows:
                if not self.space.contains(self.algebra.multiply({i: ONE}, row)):
                    raise InvalidAlgebraError("Subspace is not closed under multiplication by the algebra")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def codim(self) -> int:
        return self.space.codim

    def basis(self) -> List[SparseVector]:
        return self.space.basis()

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return self.space.contains(v)

    def _check(self, other: "IdealSubspace") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraMismatchError(f"Ideals of {self.algebra.name} and {other.algebra.name} cannot be combined")

    def sum(self, other: "IdealSubspace") -> "IdealSubspace":
        self._check(other)
        return IdealSubspace(self.algebra, self.space.sum(other.space))

    def intersect(self, other: "IdealSubspace") -> "IdealSubspace":
        self._check(other)
        return IdealSubspace(self.algebra, self.space.intersect(other.space))

    def product(self, other: "IdealSubspace") -> "IdealSubspace":
        self._check(other)
        products = [self.algebra.multiply(x, y) for x in self.space.rows for y in other.space.rows]
        return IdealSubspace(self.algebra, Subspace.span(products, self.algebra.dim))

    def power(self, k: int) -> "IdealSubspace":
        if k < 0:
            raise ValueError("Ideal powers need k >= 0")
        out = unit_ideal(self.algebra)
        for _ in range(k):
            out = out.product(self)
        return out

    def is_comaximal(self, other: "IdealSubspace") -> bool:
        return self.sum(other).codim == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealSubspace):
            return NotImplemented
        return self.algebra is other.algebra and self.space == other.space

    def __repr__(self) -> str:
        return f"IdealSubspace({self.algebra.name}, dim={self.dim}, codim={self.codim})"


def zero_ideal(a: CommAlgebra) -> IdealSubspace:
    return IdealSubspace(a, Subspace.zero(a.dim))


def unit_ideal(a: CommAlgebra) -> IdealSubspace:
    return IdealSubspace(a, Subspace.full(a.dim))


def ideal_generated(a: CommAlgebra, elements: Iterable[Mapping[int, Scalar]]) -> IdealSubspace:
    vectors = [a.multiply({i: ONE}, x) for x in elements for i in range(a.dim)]
    return IdealSubspace(a, Subspace.span(vectors, a.dim))


def ideal_ops(
    i: IdealSubspace,
    j: Optional[IdealSubspace],
    op: str,
    k: Optional[int] = None,
) -> Union[IdealSubspace, int, bool]:
    if op == "power":
        return i.power(k if k is not None else 1)
    if op == "codim":
        return i.codim
    if j is None:
        raise ValueError(f"Ideal operation {op!r} needs two ideals")
    if op == "sum":
        return i.sum(j)
    if op == "product":
        return i.product(j)
    if op == "intersect":
        return i.intersect(j)
    if op == "is_comaximal":
        return i.is_comaximal(j)
    raise ValueError(f"Unknown ideal operation {op!r}")


def largest_ideal_inside(s: Subspace, a: CommAlgebra) -> IdealSubspace:
    """
    Sum of all ideals inside S.  Iterates I <- {x in I : A x in I} from I = S;
    each step only shrinks I and every ideal inside S survives every step.
    """
    if s.ambient_dim != a.dim:
        raise AlgebraMismatchError("Subspace does not live in the algebra")
    current = s
    while True:
        rows = list(current.rows)
        if not rows:
            break
        # coefficient vectors c with reduce(b_j * sum c_r row_r) = 0 for every j
        columns = []
        for row in rows:
            column: SparseVector = {}
            for j in range(a.dim):
                residual = current.reduce(a.multiply({j: ONE}, row))
                for k, value in residual.items():
                    column[j * a.dim + k] = value
            columns.append(column)
        constraints = Matrix.from_column_vectors(columns, a.dim * a.dim)
        survivors = []
        for c in kernel(constraints):
            v: SparseVector = {}
            for r, coeff in c.items():
                v = vec_axpy(v, coeff, rows[r])
            survivors.append(v)
        shrunk = Subspace.span(survivors, a.dim)
        if shrunk.dim == current.dim:
            break
        current = shrunk
    logger.debug("largest ideal inside a %d-dim subspace of %s has dim %d", s.dim, a.name, current.dim)
    return IdealSubspace(a, current)
