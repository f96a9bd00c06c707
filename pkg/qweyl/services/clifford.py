"""
Clifford superalgebras and their irreducible supermodules.

Generators x_k are odd with x_i x_j + x_j x_i = 2 f(x_i, x_j) for a symmetric
form f.  Irreducible modules come from congruence-diagonalizing f and placing
Jordan-Wigner gamma matrices on ceil(l/2) qubits, l = rank f.  A basis state
is even or odd according to the parity of its bit count, so every gamma
matrix is an odd operator.

The same construction gives H(psi), the top space of every induced module:
the odd Cartan part of q(n) (x) A acts through the Clifford algebra of the
form F_psi(u, v) = psi([u, v]), and its radical acts by zero.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from qweyl.core.errors import DegenerateFormError, DimensionMismatchError, NonDominantWeightError, VerificationError
from qweyl.services.coeff import CommAlgebra
from qweyl.services.liesuper import LieSuperAlgebra, RootDatum, WeightVector
from qweyl.services.linalg import Matrix, SparseVector, Subspace, inverse, vec_axpy
from qweyl.services.scalars import I, ONE, ZERO, Coercible, Scalar, sqrt
from qweyl.services.superspace import EVEN, ODD, SuperSpace, intertwiners

logger = logging.getLogger(__name__)

_X = Matrix(2, 2, {(0, 1): ONE, (1, 0): ONE})
_Y = Matrix(2, 2, {(0, 1): -I, (1, 0): I})
_Z = Matrix.diagonal([ONE, -ONE])
_ID2 = Matrix.identity(2)


# ======================================================================
# Quadratic pairs and the algebra
# ======================================================================
@dataclass(frozen=True, eq=False)
class QuadraticPair:
    space: SuperSpace
    form: Matrix

    def __post_init__(self) -> None:
        r = self.space.total_dim
        if self.form.shape != (r, r):
            raise DimensionMismatchError(f"Form is {self.form.shape}, generators need {r}x{r}")
        if any(p != ODD for p in self.space.parities):
            raise ValueError("Clifford generators must all be odd")
        if self.form != self.form.transpose():
            raise ValueError("Clifford form must be symmetric")

    @classmethod
    def standard(cls, r: int, form: Optional[Matrix] = None, prefix: str = "t") -> "QuadraticPair":
        space = SuperSpace(tuple(f"{prefix}{k}" for k in range(r)), (ODD,) * r)
        return cls(space, form if form is not None else Matrix.identity(r))

    @property
    def rank(self) -> int:
        return self.space.total_dim


class CliffordAlgebra:
    """Basis: strictly increasing index tuples; products by straightening."""

    def __init__(self, pair: QuadraticPair) -> None:
        self.pair = pair
        r = pair.rank
        self.basis: Tuple[Tuple[int, ...], ...] = tuple(
            word for size in range(r + 1) for word in itertools.combinations(range(r), size)
        )
        self._index = {word: k for k, word in enumerate(self.basis)}
        self._normal = lru_cache(maxsize=None)(self._normal_uncached)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, word: Tuple[int, ...]) -> int:
        return self._index[word]

    def parity(self, k: int) -> int:
        return len(self.basis[k]) % 2

    def _normal_uncached(self, word: Tuple[int, ...]) -> Dict[Tuple[int, ...], Scalar]:
        form = self.pair.form
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if a < b:
                continue
            rest = word[:p] + word[p + 2:]
            out: Dict[Tuple[int, ...], Scalar] = {}
            if a == b:
                # x_a x_a = f(a, a)
                if form[a, a]:
                    for w, c in self._normal(rest).items():
                        out[w] = out.get(w, ZERO) + form[a, a] * c
            else:
                # x_a x_b = -x_b x_a + 2 f(a, b)
                for w, c in self._normal(word[:p] + (b, a) + word[p + 2:]).items():
                    out[w] = out.get(w, ZERO) - c
                if form[a, b]:
                    for w, c in self._normal(rest).items():
                        out[w] = out.get(w, ZERO) + 2 * form[a, b] * c
            return {w: c for w, c in out.items() if c}
        return {word: ONE}

    def multiply(self, u: SparseVector, v: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                for w, c in self._normal(self.basis[i] + self.basis[j]).items():
                    out = vec_axpy(out, a * b * c, {self._index[w]: ONE})
        return out

    def generator(self, k: int) -> SparseVector:
        return {self._index[(k,)]: ONE}

    def left_multiplication(self, u: SparseVector) -> Matrix:
        columns = [self.multiply(u, {j: ONE}) for j in range(self.dim)]
        return Matrix.from_column_vectors(columns, self.dim)


def clifford_algebra(pair: QuadraticPair) -> CliffordAlgebra:
    return CliffordAlgebra(pair)


# ======================================================================
# Diagonalization
# ======================================================================
@dataclass(frozen=True, eq=False)
class FormDiagonalization:
    """P G P^T = diag(d_0, ..., d_{l-1}, 0, ..., 0) with Q = P^{-1}."""

    p: Matrix
    q: Matrix
    diagonal: Tuple[Scalar, ...]
    rank: int

    def radical(self) -> Subspace:
        """ker G, spanned by the rows of P past the rank."""
        rows = [self.p.row(r) for r in range(self.rank, self.p.rows)]
        return Subspace.span(rows, self.p.cols)


def diagonalize_form(form: Matrix) -> FormDiagonalization:
    """Symmetric Gaussian elimination by simultaneous row and column moves."""
    n = form.rows
    if form.shape != (n, n) or form != form.transpose():
        raise ValueError("Only symmetric square forms can be diagonalized")
    g = [[form[r, c] for c in range(n)] for r in range(n)]
    p = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]

    def add_multiple(target: int, source: int, c: Scalar) -> None:
        # row/col target += c * row/col source
        for k in range(n):
            g[target][k] = g[target][k] + c * g[source][k]
        for k in range(n):
            g[k][target] = g[k][target] + c * g[k][source]
        for k in range(n):
            p[target][k] = p[target][k] + c * p[source][k]

    def swap(a: int, b: int) -> None:
        if a == b:
            return
        g[a], g[b] = g[b], g[a]
        for row in g:
            row[a], row[b] = row[b], row[a]
        p[a], p[b] = p[b], p[a]

    rank_found = 0
    for k in range(n):
        pivot = next((j for j in range(k, n) if g[j][j]), None)
        if pivot is None:
            pair = next(((j, l) for j in range(k, n) for l in range(j + 1, n) if g[j][l]), None)
            if pair is None:
                break
            j, l = pair
            # g[j][j] becomes 2 g[j][l] since g[l][l] = 0
            add_multiple(j, l, ONE)
            pivot = j
        swap(k, pivot)
        for r in range(k + 1, n):
            if g[r][k]:
                add_multiple(r, k, -(g[r][k] / g[k][k]))
        rank_found = k + 1

    p_matrix = Matrix.from_rows(p) if n else Matrix(0, 0)
    diagonal = tuple(g[k][k] for k in range(n))
    if any(g[r][c] for r in range(n) for c in range(n) if r != c):
        raise VerificationError("Congruence diagonalization left off-diagonal entries")
    return FormDiagonalization(p_matrix, inverse(p_matrix) if n else Matrix(0, 0), diagonal, rank_found)


# ======================================================================
# Modules
# ======================================================================
def _gamma_matrices(count: int) -> Tuple[SuperSpace, List[Matrix]]:
    """Jordan-Wigner t_0..t_{count-1} on ceil(count/2) qubits, t_k^2 = 1."""
    m = (count + 1) // 2
    states = range(2 ** m)
    labels = tuple("h" + format(s, f"0{m}b") if m else "h" for s in states)
    parities = tuple(bin(s).count("1") % 2 for s in states)
    gammas = []
    for k in range(count):
        qubit = k // 2
        factors = [_Z] * qubit + [_X if k % 2 == 0 else _Y] + [_ID2] * (m - qubit - 1)
        t = Matrix.identity(1)
        for factor in factors:
            t = t.kron(factor)
        gammas.append(t)
    return SuperSpace(labels, parities), gammas


@dataclass(frozen=True, eq=False)
class CliffordModule:
    space: SuperSpace
    actions: Tuple[Matrix, ...]

    @property
    def dim(self) -> Tuple[int, int]:
        return self.space.dim

    def check_relations(self, form: Matrix) -> bool:
        """rho(x_i) rho(x_j) + rho(x_j) rho(x_i) == 2 f(x_i, x_j) id, exactly."""
        identity = Matrix.identity(self.space.total_dim)
        for i, j in itertools.combinations_with_replacement(range(len(self.actions)), 2):
            a, b = self.actions[i], self.actions[j]
            if a @ b + b @ a != identity.scale(2 * form[i, j]):
                return False
        return True

    def commutant_dim(self, degree: int) -> int:
        maps = intertwiners(
            self.space, self.space, self.actions, self.actions, (ODD,) * len(self.actions), degree=degree
        )
        return len(maps)

    def even_commutant_dim(self) -> int:
        return self.commutant_dim(EVEN)

    def odd_commutant_dim(self) -> int:
        return self.commutant_dim(ODD)


def _module_from_diagonalization(diag: FormDiagonalization) -> CliffordModule:
    """rho(x_k) = sum_{i<l} Q[k, i] sqrt(d_i) t_i; directions past the rank act by 0."""
    space, gammas = _gamma_matrices(diag.rank)
    scaled = [gammas[i].scale(sqrt(diag.diagonal[i])) for i in range(diag.rank)]
    actions = []
    for k in range(diag.q.rows):
        rho = Matrix.zeros(space.total_dim, space.total_dim)
        for i, value in diag.q.row(k).items():
            if i < diag.rank:
                rho = rho + scaled[i].scale(value)
        actions.append(rho)
    return CliffordModule(space, tuple(actions))


def irreducible_module(c: CliffordAlgebra) -> CliffordModule:
    diag = diagonalize_form(c.pair.form)
    if diag.rank < c.pair.rank:
        raise DegenerateFormError(
            f"Form has rank {diag.rank} on {c.pair.rank} generators; quotient the radical first"
        )
    module = _module_from_diagonalization(diag)
    if not module.check_relations(c.pair.form):
        raise VerificationError("Gamma-matrix module violates the Clifford relations")
    logger.debug("irreducible Clifford module on %d generators: dims %s", c.pair.rank, module.dim)
    return module


def standard_idempotent(c: CliffordAlgebra) -> SparseVector:
    """prod_j (1 + i t_{2j} t_{2j+1}) / 2, for generators squaring to 1."""
    half = Scalar.of(1) / 2
    e = {c.index(()): ONE}
    for j in range(c.pair.rank // 2):
        pair_word = c.multiply(c.generator(2 * j), c.generator(2 * j + 1))
        factor = vec_axpy({c.index(()): half}, half * I, pair_word)
        e = c.multiply(e, factor)
    return e


def left_ideal_dimension(c: CliffordAlgebra, e: Optional[SparseVector] = None) -> int:
    """dim Cl.e, by default for the standard idempotent."""
    e = standard_idempotent(c) if e is None else e
    products = [c.multiply({k: ONE}, e) for k in range(c.dim)]
    return Subspace.span(products, c.dim).dim


# ======================================================================
# Map weights and H(psi)
# ======================================================================
@dataclass(frozen=True, eq=False)
class MapWeight:
    """values[i][j] = psi(k_{i+1} (x) b_j) over the basis b_j of A."""

    algebra: CommAlgebra
    values: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if any(len(row) != self.algebra.dim for row in self.values):
            raise DimensionMismatchError(f"psi needs {self.algebra.dim} columns per row")
        for coordinate in self.lam_values:
            if not coordinate.is_rational() or coordinate.as_fraction().denominator != 1:
                raise NonDominantWeightError(f"psi restricted to the Cartan is not integral: {coordinate}")

    @classmethod
    def of(cls, algebra: CommAlgebra, values: Sequence[Sequence[Coercible]]) -> "MapWeight":
        return cls(algebra, tuple(tuple(Scalar.of(x) for x in row) for row in values))

    @classmethod
    def from_lambda(cls, lam: Sequence[int], algebra: CommAlgebra, point: int = 0) -> "MapWeight":
        """psi(k_i (x) a) = lam_i * a(point)."""
        if not 0 <= point < len(algebra.points):
            raise ValueError(f"{algebra.name} has no point {point}")
        values = algebra.points[point]
        return cls.of(algebra, [[Scalar.of(l) * v for v in values] for l in lam])

    @classmethod
    def zero(cls, n: int, algebra: CommAlgebra) -> "MapWeight":
        return cls.of(algebra, [[ZERO] * algebra.dim for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def lam_values(self) -> List[Scalar]:
        return [self.value(i, self.algebra.unit) for i in range(len(self.values))]

    @property
    def lam(self) -> WeightVector:
        return WeightVector.of(c.as_int() for c in self.lam_values)

    def value(self, i: int, a: SparseVector) -> Scalar:
        """psi(k_{i+1} (x) a)."""
        total = ZERO
        for j, c in a.items():
            total = total + c * self.values[i][j]
        return total

    def __add__(self, other: "MapWeight") -> "MapWeight":
        if self.algebra is not other.algebra or self.n != other.n:
            raise DimensionMismatchError("Map weights live on different current algebras")
        return MapWeight(
            self.algebra,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.values, other.values)),
        )


@dataclass(frozen=True, eq=False)
class HighestWeightSpace:
    psi: MapWeight
    pair: QuadraticPair
    diagonalization: FormDiagonalization
    module: CliffordModule
    # (base index of k_i', coefficient index) -> operator
    odd_actions: Dict[Tuple[int, int], Matrix]
    kernel_acts_trivially: bool

    @property
    def space(self) -> SuperSpace:
        return self.module.space

    @property
    def dim(self) -> Tuple[int, int]:
        return self.module.dim

    @property
    def rank(self) -> int:
        return self.diagonalization.rank

    def even_value(self, i: int, a: SparseVector) -> Scalar:
        return self.psi.value(i, a)

    def even_commutant_dim(self) -> int:
        return self.module.even_commutant_dim()


def build_H(psi: MapWeight, q: LieSuperAlgebra, rd: RootDatum, a: CommAlgebra) -> HighestWeightSpace:
    """
    H(psi) for psi on h_0 (x) A.  The form on h_1 (x) A is
    f(x, y) = psi([x, y]) / 2 so that rho(x) rho(y) + rho(y) rho(x) = psi([x, y]).
    """
    if psi.algebra is not a or psi.n != rd.n:
        raise DimensionMismatchError("psi does not match the current algebra")
    even_cartan = [q.index(label) for label in rd.cartan_labels[0]]
    odd_cartan = [q.index(label) for label in rd.cartan_labels[1]]
    generators = [(x, b) for x in odd_cartan for b in range(a.dim)]
    position = {x: i for i, x in enumerate(even_cartan)}

    half = Scalar.of(1) / 2
    entries: Dict[Tuple[int, int], Scalar] = {}
    for (r, (x, b1)), (c, (y, b2)) in itertools.product(enumerate(generators), repeat=2):
        product = a.multiply({b1: ONE}, {b2: ONE})
        total = ZERO
        for z, coeff in q.bracket_basis(x, y).items():
            if z not in position:
                raise VerificationError("[h_1, h_1] left the even Cartan subalgebra")
            total = total + coeff * psi.value(position[z], product)
        if total:
            entries[(r, c)] = half * total
    labels = tuple(f"{q.labels[x]}*{a.labels[b]}" for x, b in generators)
    pair = QuadraticPair(SuperSpace(labels, (ODD,) * len(labels)), Matrix(len(labels), len(labels), entries))

    diag = diagonalize_form(pair.form)
    module = _module_from_diagonalization(diag)
    if not module.check_relations(pair.form):
        raise VerificationError("H(psi) violates the Clifford relations")

    kernel_trivial = True
    for v in diag.radical().rows:
        op = Matrix.zeros(module.space.total_dim, module.space.total_dim)
        for k, c in v.items():
            op = op + module.actions[k].scale(c)
        kernel_trivial = kernel_trivial and op.is_zero()

    odd_actions = {generators[k]: module.actions[k] for k in range(len(generators))}
    logger.debug("H(psi) for lambda=%s: rank %d, dims %s", psi.lam, diag.rank, module.dim)
    return HighestWeightSpace(psi, pair, diag, module, odd_actions, kernel_trivial)
