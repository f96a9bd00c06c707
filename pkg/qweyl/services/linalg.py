"""
Exact sparse linear algebra over the scalar field.

Vectors are plain dicts {index: Scalar} with no stored zeros.  Matrices keep
the same sparse layout and are immutable once built.  Row reduction always
pivots on the first row with a nonzero entry in the leftmost unresolved
column, so results are reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from qweyl.core.config import settings
from qweyl.core.errors import DimensionMismatchError, ScalarDivisionError, VerificationError
from qweyl.services.scalars import ONE, ZERO, Coercible, Scalar

logger = logging.getLogger(__name__)

SparseVector = Dict[int, Scalar]


# ======================================================================
# Sparse vector helpers
# ======================================================================
def vec_axpy(acc: Mapping[int, Scalar], coeff: Coercible, v: Mapping[int, Scalar]) -> SparseVector:
    """Return acc + coeff * v as a new vector."""
    coeff = Scalar.of(coeff)
    out = dict(acc)
    if coeff.is_zero():
        return out
    for k, x in v.items():
        value = out.get(k, ZERO) + coeff * x
        if value.is_zero():
            out.pop(k, None)
        else:
            out[k] = value
    return out


def vec_add(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> SparseVector:
    return vec_axpy(u, ONE, v)


def vec_sub(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> SparseVector:
    return vec_axpy(u, -ONE, v)


def vec_scale(v: Mapping[int, Scalar], coeff: Coercible) -> SparseVector:
    coeff = Scalar.of(coeff)
    if coeff.is_zero():
        return {}
    return {k: x * coeff for k, x in v.items()}


def unit_vector(index: int) -> SparseVector:
    return {index: ONE}


def vec_from_dense(values: Sequence[Coercible]) -> SparseVector:
    out = {}
    for k, x in enumerate(values):
        x = Scalar.of(x)
        if x:
            out[k] = x
    return out


def vec_to_dense(v: Mapping[int, Scalar], dim: int) -> List[Scalar]:
    return [v.get(k, ZERO) for k in range(dim)]


# ======================================================================
# Matrix
# ======================================================================
class Matrix:
    __slots__ = ("rows", "cols", "_entries", "_row_map", "_col_map")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], Coercible]] = None):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"Negative matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        cleaned: Dict[Tuple[int, int], Scalar] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatchError(f"Entry ({r},{c}) outside {rows}x{cols} matrix")
            value = Scalar.of(value)
            if value:
                cleaned[(r, c)] = value
        self._entries = cleaned
        self._row_map: Optional[Dict[int, SparseVector]] = None
        self._col_map: Optional[Dict[int, SparseVector]] = None

    # --------------------------------------------------------------
    # constructors
    # --------------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence[Coercible]) -> "Matrix":
        return cls(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Coercible]]) -> "Matrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != n_cols:
                raise DimensionMismatchError("Ragged rows")
            for c, value in enumerate(row):
                entries[(r, c)] = value
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_row_vectors(cls, vectors: Sequence[Mapping[int, Scalar]], cols: int) -> "Matrix":
        return cls(len(vectors), cols, {(r, c): x for r, v in enumerate(vectors) for c, x in v.items()})

    @classmethod
    def from_column_vectors(cls, vectors: Sequence[Mapping[int, Scalar]], rows: int) -> "Matrix":
        return cls(rows, len(vectors), {(r, c): x for c, v in enumerate(vectors) for r, x in v.items()})

    # --------------------------------------------------------------
    # access
    # --------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Scalar:
        return self._entries.get(key, ZERO)

    def items(self) -> Iterable[Tuple[Tuple[int, int], Scalar]]:
        return self._entries.items()

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def _build_maps(self) -> None:
        row_map: Dict[int, SparseVector] = {}
        col_map: Dict[int, SparseVector] = {}
        for (r, c), value in self._entries.items():
            row_map.setdefault(r, {})[c] = value
            col_map.setdefault(c, {})[r] = value
        self._row_map, self._col_map = row_map, col_map

    def row(self, r: int) -> SparseVector:
        if self._row_map is None:
            self._build_maps()
        return dict(self._row_map.get(r, {}))

    def column(self, c: int) -> SparseVector:
        if self._col_map is None:
            self._build_maps()
        return dict(self._col_map.get(c, {}))

    def to_rows(self) -> List[List[Scalar]]:
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    def is_zero(self) -> bool:
        return not self._entries

    # --------------------------------------------------------------
    # arithmetic
    # --------------------------------------------------------------
    def apply(self, v: Mapping[int, Scalar]) -> SparseVector:
        """Matrix times a sparse column vector."""
        if self._col_map is None:
            self._build_maps()
        out: SparseVector = {}
        for c, x in v.items():
            column = self._col_map.get(c)
            if column:
                out = vec_axpy(out, x, column)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        entries: Dict[Tuple[int, int], Scalar] = {}
        for c in range(other.cols):
            for r, value in self.apply(other.column(c)).items():
                entries[(r, c)] = value
        return Matrix(self.rows, other.cols, entries)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shapes differ: {self.shape} vs {other.shape}")
        entries = dict(self._entries)
        for key, value in other._entries.items():
            entries[key] = entries.get(key, ZERO) + (value if sign > 0 else -value)
        return Matrix(self.rows, self.cols, entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def scale(self, coeff: Coercible) -> "Matrix":
        coeff = Scalar.of(coeff)
        return Matrix(self.rows, self.cols, {k: v * coeff for k, v in self._entries.items()})

    def __neg__(self) -> "Matrix":
        return self.scale(-ONE)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def kron(self, other: "Matrix") -> "Matrix":
        entries = {}
        for (r1, c1), v1 in self._entries.items():
            for (r2, c2), v2 in other._entries.items():
                entries[(r1 * other.rows + r2, c1 * other.cols + c2)] = v1 * v2
        return Matrix(self.rows * other.rows, self.cols * other.cols, entries)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        row_pos = {r: i for i, r in enumerate(row_indices)}
        col_pos = {c: j for j, c in enumerate(col_indices)}
        entries = {
            (row_pos[r], col_pos[c]): v
            for (r, c), v in self._entries.items()
            if r in row_pos and c in col_pos
        }
        return Matrix(len(row_indices), len(col_indices), entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ======================================================================
# Row reduction
# ======================================================================
def _rref_rows_sparse(rows: List[SparseVector]) -> Tuple[List[SparseVector], List[int]]:
    rows = [dict(r) for r in rows if r]
    columns = sorted({c for row in rows for c in row})
    pivots: List[int] = []
    rank = 0
    for col in columns:
        found = next((i for i in range(rank, len(rows)) if col in rows[i]), None)
        if found is None:
            continue
        rows[rank], rows[found] = rows[found], rows[rank]
        pivot_row = vec_scale(rows[rank], rows[rank][col].inverse())
        rows[rank] = pivot_row
        for i in range(len(rows)):
            if i != rank and col in rows[i]:
                rows[i] = vec_axpy(rows[i], -rows[i][col], pivot_row)
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _rref_rows_dense(rows: List[SparseVector], n_cols: int) -> Tuple[List[SparseVector], List[int]]:
    dense = [vec_to_dense(r, n_cols) for r in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(n_cols):
        found = next((i for i in range(rank, len(dense)) if dense[i][col]), None)
        if found is None:
            continue
        dense[rank], dense[found] = dense[found], dense[rank]
        inv = dense[rank][col].inverse()
        dense[rank] = [x * inv for x in dense[rank]]
        for i in range(len(dense)):
            factor = dense[i][col]
            if i != rank and factor:
                dense[i] = [a - factor * b for a, b in zip(dense[i], dense[rank])]
        pivots.append(col)
        rank += 1
    return [vec_from_dense(r) for r in dense[:rank]], pivots


def rref_rows(rows: List[SparseVector], n_cols: int) -> Tuple[List[SparseVector], List[int]]:
    """Reduced echelon rows (nonzero only) and their pivot columns."""
    if len(rows) * n_cols <= settings.dense_threshold:
        return _rref_rows_dense(rows, n_cols)
    return _rref_rows_sparse(rows)


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    reduced, pivots = rref_rows([m.row(r) for r in range(m.rows)], m.cols)
    return Matrix.from_row_vectors(reduced + [{}] * (m.rows - len(reduced)), m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_rows(rows: List[SparseVector], n_cols: int) -> List[SparseVector]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    reduced, pivots = rref_rows(rows, n_cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v: SparseVector = {free: ONE}
        for row, p in zip(reduced, pivots):
            x = row.get(free)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def kernel(m: Matrix) -> List[SparseVector]:
    return kernel_rows([m.row(r) for r in range(m.rows)], m.cols)


def solve(a: Matrix, b: Mapping[int, Scalar]) -> Optional[SparseVector]:
    """One x with a.x = b, or None when the system is inconsistent."""
    augmented = []
    for r in range(a.rows):
        row = a.row(r)
        if b.get(r):
            row[a.cols] = b[r]
        augmented.append(row)
    reduced, pivots = rref_rows(augmented, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = {p: row[a.cols] for row, p in zip(reduced, pivots) if row.get(a.cols)}
    if settings.verify_solves and a.apply(x) != {r: v for r, v in b.items() if v}:
        raise VerificationError("solve() produced x with a.x != b")
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatchError(f"Cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    augmented = [vec_add(m.row(r), {n + r: ONE}) for r in range(n)]
    reduced, pivots = rref_rows(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ScalarDivisionError("Matrix is singular")
    return Matrix(n, n, {(r, c - n): v for r, row in enumerate(reduced) for c, v in row.items() if c >= n})


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


# ======================================================================
# Subspaces
# ======================================================================
@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space in reduced echelon form: pivots increase, each pivot is 1."""

    ambient_dim: int
    rows: Tuple[SparseVector, ...] = ()
    pivots: Tuple[int, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, Scalar]], ambient_dim: int) -> "Subspace":
        vectors = [dict(v) for v in vectors]
        for v in vectors:
            if any(not 0 <= k < ambient_dim for k in v):
                raise DimensionMismatchError(f"Vector has coordinates outside dimension {ambient_dim}")
        reduced, pivots = rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, tuple(reduced), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple({i: ONE} for i in range(ambient_dim)), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def basis(self) -> List[SparseVector]:
        return [dict(r) for r in self.rows]

    def reduce(self, v: Mapping[int, Scalar]) -> SparseVector:
        """Residual of v after removing its component along the pivot rows."""
        out = dict(v)
        for row, p in zip(self.rows, self.pivots):
            x = v.get(p)
            if x:
                out = vec_axpy(out, -x, row)
        return out

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(r) for r in other.rows)

    def coordinates(self, v: Mapping[int, Scalar]) -> SparseVector:
        """Coefficients of v (assumed in the span) in the row basis."""
        return {i: v[p] for i, p in enumerate(self.pivots) if v.get(p)}

    def quotient_basis(self) -> List[int]:
        """Non-pivot coordinates; their unit vectors represent ambient/self."""
        pivot_set = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in pivot_set]

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.rows or not other.rows:
            return Subspace.zero(self.ambient_dim)
        columns = list(self.rows) + [vec_scale(r, -ONE) for r in other.rows]
        stacked = Matrix.from_column_vectors(columns, self.ambient_dim)
        vectors = []
        for k in kernel(stacked):
            v: SparseVector = {}
            for i, row in enumerate(self.rows):
                if k.get(i):
                    v = vec_axpy(v, k[i], row)
            vectors.append(v)
        return Subspace.span(vectors, self.ambient_dim)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(f"Ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.pivots == other.pivots and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_ops(a: Subspace, b: Subspace, op: str):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"Ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    if op == "sum":
        return a.sum(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "contains":
        return a.contains_subspace(b)
    if op == "quotient_basis":
        return [unit_vector(i) for i in b.quotient_basis()]
    raise ValueError(f"Unknown subspace operation {op!r}")


class EchelonBasis:
    """
    Incrementally built reduced echelon basis.

    ``add`` returns the normalized residual when the vector is new and None
    otherwise, which is what the worklist closures need.
    """

    def __init__(self, ambient_dim: int) -> None:
        self.ambient_dim = ambient_dim
        self._rows: Dict[int, SparseVector] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: Mapping[int, Scalar]) -> SparseVector:
        out = dict(v)
        for p, row in self._rows.items():
            x = v.get(p)
            if x:
                out = vec_axpy(out, -x, row)
        return out

    def add(self, v: Mapping[int, Scalar]) -> Optional[SparseVector]:
        residual = self.reduce(v)
        if not residual:
            return None
        p = min(residual)
        residual = vec_scale(residual, residual[p].inverse())
        for q, row in list(self._rows.items()):
            x = row.get(p)
            if x:
                self._rows[q] = vec_axpy(row, -x, residual)
        self._rows[p] = residual
        return dict(residual)

    def to_subspace(self) -> Subspace:
        pivots = tuple(sorted(self._rows))
        return Subspace(self.ambient_dim, tuple(dict(self._rows[p]) for p in pivots), pivots)
