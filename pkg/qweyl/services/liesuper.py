"""
Lie superalgebras from graded structure constants.

``build_q`` realizes the queer Lie superalgebra q(n) inside gl(n|n) as the
block matrices [[A, B], [B, A]]: even part A-blocks, odd part B-blocks.
Structure constants are computed once from those matrices; the defining
presentation is only checked against them.  ``current_algebra`` forms
q(n) (x) A for a finite-dimensional commutative coefficient algebra A.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from qweyl.core.errors import InvalidRankError, NotARootError, UnknownGeneratorError, VerificationError
from qweyl.models import PresentationReport, RelationResult
from qweyl.services.coeff import CommAlgebra
from qweyl.services.linalg import SparseVector, vec_axpy, vec_scale
from qweyl.services.scalars import ONE, Scalar
from qweyl.services.superspace import EVEN, ODD, SuperSpace, koszul_sign

logger = logging.getLogger(__name__)


# ======================================================================
# Weights
# ======================================================================
@dataclass(frozen=True, order=True)
class WeightVector:
    """Integer vector in the epsilon basis of the even Cartan dual."""

    coords: Tuple[int, ...]

    @classmethod
    def of(cls, values: Iterable[int]) -> "WeightVector":
        return cls(tuple(int(v) for v in values))

    @classmethod
    def zero(cls, n: int) -> "WeightVector":
        return cls((0,) * n)

    @classmethod
    def epsilon(cls, n: int, i: int) -> "WeightVector":
        """epsilon_i, 1-based."""
        return cls(tuple(1 if k == i - 1 else 0 for k in range(n)))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k: int) -> int:
        return self.coords[k]

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "WeightVector":
        return WeightVector(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def h_value(self, i: int) -> int:
        """lambda(h_i) = lambda_i - lambda_{i+1}, 1-based i."""
        return self.coords[i - 1] - self.coords[i]

    def is_dominant(self) -> bool:
        return all(self.h_value(i) >= 0 for i in range(1, len(self)))

    def in_lambda_plus(self) -> bool:
        """Dominant, and lambda_i = lambda_{i+1} only when both vanish."""
        if not self.is_dominant():
            return False
        return all(
            self.coords[i] == 0 and self.coords[i + 1] == 0
            for i in range(len(self) - 1)
            if self.coords[i] == self.coords[i + 1]
        )

    def cone_depth(self, top: "WeightVector") -> Optional[int]:
        """
        sum(c_i) when top - self = sum c_i alpha_i with every c_i >= 0,
        otherwise None.
        """
        beta = np.array(top.coords, dtype=np.int64) - np.array(self.coords, dtype=np.int64)
        if beta.sum() != 0:
            return None
        partial = np.cumsum(beta)[:-1]
        if (partial < 0).any():
            return None
        return int(partial.sum())

    def signed_depth(self, top: "WeightVector") -> int:
        """sum of the partial sums of top - self, without sign checks."""
        beta = np.array(top.coords, dtype=np.int64) - np.array(self.coords, dtype=np.int64)
        return int(np.cumsum(beta)[:-1].sum())

    def dominance_below(self, lam: "WeightVector") -> bool:
        """sorted(self) lies below lam in dominance order with the same total."""
        mu = np.sort(np.array(self.coords, dtype=np.int64))[::-1]
        top = np.array(lam.coords, dtype=np.int64)
        if mu.sum() != top.sum():
            return False
        return bool((np.cumsum(mu) <= np.cumsum(top)).all())

    def permuted(self, perm: Sequence[int]) -> "WeightVector":
        return WeightVector(tuple(self.coords[p] for p in perm))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


# ======================================================================
# Lie superalgebras
# ======================================================================
class LieSuperAlgebra:
    """
    Finite-dimensional Lie superalgebra given by a homogeneous basis and
    sparse structure constants [b_i, b_j] = sum_k c_ijk b_k.
    """

    def __init__(
        self,
        space: SuperSpace,
        structure: Mapping[Tuple[int, int], SparseVector],
        weights: Optional[Sequence[WeightVector]] = None,
        name: str = "",
    ) -> None:
        self.space = space
        self.structure: Dict[Tuple[int, int], SparseVector] = {k: dict(v) for k, v in structure.items() if v}
        self.weights = tuple(weights) if weights is not None else None
        self.name = name
        self._index = {label: i for i, label in enumerate(space.labels)}

    @property
    def dim(self) -> int:
        return self.space.total_dim

    @property
    def labels(self) -> Tuple[Hashable, ...]:
        return self.space.labels

    def parity(self, i: int) -> int:
        return self.space.parities[i]

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownGeneratorError(f"{label!r} is not a basis element of {self.name or 'the algebra'}") from None

    def basis_vector(self, label: Hashable) -> SparseVector:
        return {self.index(label): ONE}

    def vector(self, terms: Mapping[Hashable, Union[int, Scalar]]) -> SparseVector:
        out: SparseVector = {}
        for label, coeff in terms.items():
            out = vec_axpy(out, coeff, {self.index(label): ONE})
        return out

    def bracket_basis(self, i: int, j: int) -> SparseVector:
        return dict(self.structure.get((i, j), {}))

    def bracket(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> SparseVector:
        out: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                term = self.structure.get((i, j))
                if term:
                    out = vec_axpy(out, a * b, term)
        return out

    def vector_parity(self, v: Mapping[int, Scalar]) -> Optional[int]:
        parities = {self.parity(i) for i in v}
        return parities.pop() if len(parities) == 1 else None

    def describe(self, v: Mapping[int, Scalar]) -> str:
        if not v:
            return "0"
        return " + ".join(f"({v[i]})*{self.labels[i]}" for i in sorted(v))

    # ------------------------------------------------------------------
    # axioms
    # ------------------------------------------------------------------
    def check_grading(self) -> List[Tuple[int, int]]:
        bad = []
        for (i, j), v in self.structure.items():
            expected = (self.parity(i) + self.parity(j)) % 2
            if any(self.parity(k) != expected for k in v):
                bad.append((i, j))
        return bad

    def check_skew(self) -> List[Tuple[int, int]]:
        """Pairs violating [a, b] = -(-1)^{|a||b|} [b, a]."""
        bad = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                sign = -koszul_sign(self.parity(i), self.parity(j))
                if self.bracket_basis(i, j) != vec_scale(self.bracket_basis(j, i), sign):
                    bad.append((i, j))
        return bad

    def check_jacobi(self) -> List[Tuple[int, int, int]]:
        """Triples violating [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]."""
        bad = []
        units = [{i: ONE} for i in range(self.dim)]
        for a, b, c in itertools.product(range(self.dim), repeat=3):
            lhs = self.bracket(units[a], self.bracket_basis(b, c))
            rhs = self.bracket(self.bracket_basis(a, b), units[c])
            sign = koszul_sign(self.parity(a), self.parity(b))
            rhs = vec_axpy(rhs, sign, self.bracket(units[b], self.bracket_basis(a, c)))
            if lhs != rhs:
                bad.append((a, b, c))
        return bad


# ======================================================================
# q(n)
# ======================================================================
def even_label(i: int, j: int) -> str:
    return f"e_{i}_{j}"


def odd_label(i: int, j: int) -> str:
    return f"e'_{i}_{j}"


def _block_matrix(n: int, i: int, j: int, parity: int) -> np.ndarray:
    """[[E, 0], [0, E]] (even) or [[0, E], [E, 0]] (odd) with E = E_{ij}."""
    m = np.zeros((2 * n, 2 * n), dtype=np.int64)
    if parity == EVEN:
        m[i - 1, j - 1] = 1
        m[n + i - 1, n + j - 1] = 1
    else:
        m[i - 1, n + j - 1] = 1
        m[n + i - 1, j - 1] = 1
    return m


def q_basis_matrix(n: int, x: int) -> np.ndarray:
    """The 2n x 2n matrix of basis element x of q(n) in the build_q order."""
    parity, rest = divmod(x, n * n)
    i, j = divmod(rest, n)
    return _block_matrix(n, i + 1, j + 1, parity)


def _decompose(z: np.ndarray, n: int, index: Mapping[str, int]) -> SparseVector:
    a, b = z[:n, :n], z[:n, n:]
    if not (np.array_equal(z[n:, n:], a) and np.array_equal(z[n:, :n], b)):
        raise VerificationError("Bracket left the [[A, B], [B, A]] form")
    out: SparseVector = {}
    for i, j in zip(*np.nonzero(a)):
        out[index[even_label(i + 1, j + 1)]] = Scalar.of(int(a[i, j]))
    for i, j in zip(*np.nonzero(b)):
        out[index[odd_label(i + 1, j + 1)]] = Scalar.of(int(b[i, j]))
    return out


@dataclass(frozen=True)
class Chevalley:
    e: str
    e_odd: str
    f: str
    f_odd: str
    # h_i = k_i - k_{i+1} as {label: coefficient}
    h: Mapping[str, int]


@dataclass(frozen=True)
class SL2Triple:
    x: str
    y: str
    h: Mapping[str, int]


class RootDatum:
    def __init__(self, n: int, algebra: LieSuperAlgebra) -> None:
        self.n = n
        self.algebra = algebra
        self.positive_roots: Tuple[WeightVector, ...] = tuple(
            WeightVector.epsilon(n, i) - WeightVector.epsilon(n, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        )
        self.roots = self.positive_roots + tuple(-a for a in self.positive_roots)
        self.simple_roots = tuple(WeightVector.epsilon(n, i) - WeightVector.epsilon(n, i + 1) for i in range(1, n))
        self.root_space: Dict[WeightVector, Tuple[str, str]] = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    alpha = WeightVector.epsilon(n, i) - WeightVector.epsilon(n, j)
                    self.root_space[alpha] = (even_label(i, j), odd_label(i, j))
        self.cartan_labels = (
            tuple(even_label(i, i) for i in range(1, n + 1)),
            tuple(odd_label(i, i) for i in range(1, n + 1)),
        )
        self.chevalley: Dict[int, Chevalley] = {
            i: Chevalley(
                e=even_label(i, i + 1),
                e_odd=odd_label(i, i + 1),
                f=even_label(i + 1, i),
                f_odd=odd_label(i + 1, i),
                h={even_label(i, i): 1, even_label(i + 1, i + 1): -1},
            )
            for i in range(1, n)
        }

    @staticmethod
    def height(alpha: WeightVector) -> int:
        return sum(c for c in alpha.coords if c > 0)

    def is_root(self, alpha: WeightVector) -> bool:
        return alpha in self.root_space

    def odd_partner_roots(self) -> Dict[WeightVector, List[WeightVector]]:
        """For each simple root the odd positive roots alpha' with alpha + alpha' a root."""
        return {
            alpha: [beta for beta in self.positive_roots if self.is_root(alpha + beta)]
            for alpha in self.simple_roots
        }

    def roots_without_odd_partner(self) -> List[WeightVector]:
        # q(2) has the single positive root alpha_1 and 2 alpha_1 is not a root
        return [alpha for alpha, partners in self.odd_partner_roots().items() if not partners]

    def verify(self) -> List[str]:
        """Structural checks on the root datum; returns failure messages."""
        failures = []
        n = self.n
        if len(self.positive_roots) != n * (n - 1) // 2:
            failures.append("wrong number of positive roots")
        if len(self.simple_roots) != n - 1:
            failures.append("wrong number of simple roots")
        for alpha, (even, odd) in self.root_space.items():
            parities = (self.algebra.parity(self.algebra.index(even)), self.algebra.parity(self.algebra.index(odd)))
            if parities != (EVEN, ODD):
                failures.append(f"root space {alpha} is not (1|1)")

        matrix = np.array([a.coords for a in self.roots], dtype=np.int64)
        reference = {tuple(row) for row in matrix}
        for i, j in itertools.combinations(range(n), 2):
            perm = list(range(n))
            perm[i], perm[j] = perm[j], perm[i]
            if {tuple(row) for row in matrix[:, perm]} != reference:
                failures.append(f"roots not stable under transposition ({i + 1} {j + 1})")

        q = self.algebra
        for l, k_label in enumerate(self.cartan_labels[0]):
            k = q.basis_vector(k_label)
            for alpha, labels in self.root_space.items():
                for label in labels:
                    v = q.basis_vector(label)
                    if q.bracket(k, v) != vec_scale(v, alpha.coords[l]):
                        failures.append(f"[{k_label}, {label}] != {alpha.coords[l]} {label}")
        return failures


def build_q(n: int) -> Tuple[LieSuperAlgebra, RootDatum]:
    """q(n): basis e_i_j (even, row-major) then e'_i_j (odd)."""
    if n < 2:
        raise InvalidRankError(f"q(n) needs n >= 2, got {n}")
    labels: List[str] = []
    parities: List[int] = []
    matrices: List[np.ndarray] = []
    weights: List[WeightVector] = []
    for parity, make in ((EVEN, even_label), (ODD, odd_label)):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                labels.append(make(i, j))
                parities.append(parity)
                matrices.append(_block_matrix(n, i, j, parity))
                weights.append(WeightVector.epsilon(n, i) - WeightVector.epsilon(n, j))
    index = {label: k for k, label in enumerate(labels)}

    p_matrix = np.block([[np.zeros((n, n), dtype=np.int64), np.eye(n, dtype=np.int64)],
                         [-np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64)]])
    for x, px in zip(matrices, parities):
        if not np.array_equal(x @ p_matrix - (-1) ** px * (p_matrix @ x), np.zeros_like(x)):
            raise VerificationError("Basis matrix does not supercommute with P")

    structure: Dict[Tuple[int, int], SparseVector] = {}
    for a, (x, px) in enumerate(zip(matrices, parities)):
        for b, (y, py) in enumerate(zip(matrices, parities)):
            z = x @ y - koszul_sign(px, py) * (y @ x)
            if z.any():
                structure[(a, b)] = _decompose(z, n, index)

    algebra = LieSuperAlgebra(SuperSpace(tuple(labels), tuple(parities)), structure, weights, name=f"q({n})")
    logger.debug("built q(%d): %d structure constants", n, len(structure))
    return algebra, RootDatum(n, algebra)


@dataclass(frozen=True)
class TriangularDecomposition:
    negative: Tuple[str, ...]
    cartan: Tuple[str, ...]
    positive: Tuple[str, ...]


def _closed(q: LieSuperAlgebra, labels: Sequence[str], target: Sequence[str]) -> bool:
    allowed = {q.index(t) for t in target}
    for a in labels:
        for b in labels:
            if any(k not in allowed for k in q.bracket_basis(q.index(a), q.index(b))):
                return False
    return True


def triangular_decomposition(q: LieSuperAlgebra, rd: RootDatum) -> TriangularDecomposition:
    positive, negative = [], []
    for alpha, pair in rd.root_space.items():
        (positive if alpha in rd.positive_roots else negative).extend(pair)
    cartan = list(rd.cartan_labels[0] + rd.cartan_labels[1])
    ordered = lambda labels: tuple(sorted(labels, key=q.index))
    parts = TriangularDecomposition(ordered(negative), ordered(cartan), ordered(positive))

    if sorted(parts.negative + parts.cartan + parts.positive, key=q.index) != list(q.labels):
        raise VerificationError("Triangular parts do not exhaust the basis")
    for name, labels in (("n-", parts.negative), ("h", parts.cartan), ("n+", parts.positive)):
        if not _closed(q, labels, labels):
            raise VerificationError(f"{name} is not closed under the bracket")
    even_cartan, odd_cartan = rd.cartan_labels
    if not _closed(q, even_cartan, ()) or any(
        q.bracket_basis(q.index(a), q.index(b)) for a in even_cartan for b in odd_cartan
    ):
        raise VerificationError("[h_0, h] != 0")
    if not _closed(q, odd_cartan, even_cartan):
        raise VerificationError("[h_1, h_1] is not inside h_0")
    return parts


def sl2_triple(rd: RootDatum, alpha: WeightVector) -> SL2Triple:
    if alpha not in rd.positive_roots:
        raise NotARootError(f"{alpha} is not a positive even root of q({rd.n})")
    i = alpha.coords.index(1) + 1
    j = alpha.coords.index(-1) + 1
    triple = SL2Triple(x=even_label(i, j), y=even_label(j, i), h={even_label(i, i): 1, even_label(j, j): -1})

    q = rd.algebra
    x, y, h = q.basis_vector(triple.x), q.basis_vector(triple.y), q.vector(triple.h)
    if q.bracket(x, y) != h or q.bracket(h, x) != vec_scale(x, 2) or q.bracket(h, y) != vec_scale(y, -2):
        raise VerificationError(f"sl2 relations fail for {alpha}")
    return triple


# ======================================================================
# Presentation
# ======================================================================
def check_presentation(q: LieSuperAlgebra, rd: RootDatum) -> PresentationReport:
    """
    Evaluate every defining relation of the Chevalley-type presentation in
    the matrix realization.  Failures are report entries, not exceptions.
    """
    n = rd.n
    simple = range(1, n)
    cartan = range(1, n + 1)
    ch = rd.chevalley
    v = q.basis_vector
    e = lambda i: v(ch[i].e)
    e1 = lambda i: v(ch[i].e_odd)
    f = lambda i: v(ch[i].f)
    f1 = lambda i: v(ch[i].f_odd)
    k = lambda l: v(rd.cartan_labels[0][l - 1])
    k1 = lambda l: v(rd.cartan_labels[1][l - 1])
    alpha = lambda i, l: (1 if l == i else 0) - (1 if l == i + 1 else 0)
    br = q.bracket
    zero: SparseVector = {}
    results: List[RelationResult] = []

    def record(relation: str, indices: Sequence[int], lhs: SparseVector, rhs: SparseVector, case: str = None) -> None:
        passed = lhs == rhs
        results.append(
            RelationResult(
                relation=relation,
                indices=list(indices),
                passed=passed,
                case=case,
                detail=None if passed else f"lhs = {q.describe(lhs)}, rhs = {q.describe(rhs)}",
            )
        )

    for l, m in itertools.product(cartan, repeat=2):
        record("[h,h']=0", (l, m), br(k(l), k(m)), zero)
        record("[h,k_l']=0", (l, m), br(k(l), k1(m)), zero)
    for l, i in itertools.product(cartan, simple):
        a = alpha(i, l)
        record("[h,e_i]=a_i(h)e_i", (l, i), br(k(l), e(i)), vec_scale(e(i), a))
        record("[h,e_i']=a_i(h)e_i'", (l, i), br(k(l), e1(i)), vec_scale(e1(i), a))
        record("[h,f_i]=-a_i(h)f_i", (l, i), br(k(l), f(i)), vec_scale(f(i), -a))
        record("[h,f_i']=-a_i(h)f_i'", (l, i), br(k(l), f1(i)), vec_scale(f1(i), -a))
        record("[k_l',e_i]=a_i(k_l)e_i'", (l, i), br(k1(l), e(i)), vec_scale(e1(i), a))
        record("[k_l',f_i]=-a_i(k_l)f_i'", (l, i), br(k1(l), f(i)), vec_scale(f1(i), -a))
        hit = l in (i, i + 1)
        record("[k_l',e_i']=e_i if l in {i,i+1}", (l, i), br(k1(l), e1(i)), e(i) if hit else zero)
        record("[k_l',f_i']=f_i if l in {i,i+1}", (l, i), br(k1(l), f1(i)), f(i) if hit else zero)
    for i, j in itertools.product(simple, repeat=2):
        d = 1 if i == j else 0
        record("[e_i,f_j]=d_ij(k_i-k_i+1)", (i, j), br(e(i), f(j)), vec_scale(vec_axpy(k(i), -1, k(i + 1)), d))
        record("[e_i,f_j']=d_ij(k_i'-k_i+1')", (i, j), br(e(i), f1(j)), vec_scale(vec_axpy(k1(i), -1, k1(i + 1)), d))
        record("[e_i',f_j]=d_ij(k_i'-k_i+1')", (i, j), br(e1(i), f(j)), vec_scale(vec_axpy(k1(i), -1, k1(i + 1)), d))
        record("[e_i',f_j']=d_ij(k_i+k_i+1)", (i, j), br(e1(i), f1(j)), vec_scale(vec_axpy(k(i), 1, k(i + 1)), d))
        if abs(i - j) != 1:
            case = "i=j" if i == j else "|i-j|>1"
            record("[e_i,e_j']=0", (i, j), br(e(i), e1(j)), zero, case)
            record("[e_i',e_j']=0", (i, j), br(e1(i), e1(j)), zero, case)
            record("[f_i,f_j']=0", (i, j), br(f(i), f1(j)), zero, case)
            record("[f_i',f_j']=0", (i, j), br(f1(i), f1(j)), zero, case)
        if abs(i - j) > 1:
            record("[e_i,e_j]=0", (i, j), br(e(i), e(j)), zero)
            record("[f_i,f_j]=0", (i, j), br(f(i), f(j)), zero)
        if abs(i - j) == 1:
            record("[e_i,[e_i,e_j]]=0", (i, j), br(e(i), br(e(i), e(j))), zero)
            record("[e_i',[e_i,e_j]]=0", (i, j), br(e1(i), br(e(i), e(j))), zero)
            record("[f_i,[f_i,f_j]]=0", (i, j), br(f(i), br(f(i), f(j))), zero)
            record("[f_i',[f_i,f_j]]=0", (i, j), br(f1(i), br(f(i), f(j))), zero)
    for i in range(1, n - 1):
        record("[e_i,e_i+1]=[e_i',e_i+1']", (i,), br(e(i), e(i + 1)), br(e1(i), e1(i + 1)))
        record("[e_i,e_i+1']=[e_i',e_i+1]", (i,), br(e(i), e1(i + 1)), br(e1(i), e(i + 1)))
        record("[f_i+1,f_i]=[f_i+1',f_i']", (i,), br(f(i + 1), f(i)), br(f1(i + 1), f1(i)))
        record("[f_i+1,f_i']=[f_i+1',f_i]", (i,), br(f(i + 1), f1(i)), br(f1(i + 1), f(i)))
    for l, m in itertools.product(cartan, repeat=2):
        record("[k_i',k_j']=d_ij 2k_i", (l, m), br(k1(l), k1(m)), vec_scale(k(l), 2 if l == m else 0))

    report = PresentationReport(n=n, results=results)
    logger.info("presentation of q(%d): %d relations, %d failures", n, len(results), len(report.failures()))
    return report


# ======================================================================
# Current algebras
# ======================================================================
class CurrentAlgebra(LieSuperAlgebra):
    """
    g (x) A with [x (x) a, y (x) b] = [x, y] (x) ab.  Basis index of
    (x, a) is x * dim(A) + a; labels read "x*a".
    """

    def __init__(self, base: LieSuperAlgebra, coeff: CommAlgebra) -> None:
        if base.weights is None:
            raise ValueError("Base algebra needs root weights for the current construction")
        self.base = base
        self.coeff = coeff
        m = coeff.dim
        self.pairs: Tuple[Tuple[int, int], ...] = tuple((x, a) for x in range(base.dim) for a in range(m))
        labels = tuple(f"{base.labels[x]}*{coeff.labels[a]}" for x, a in self.pairs)
        parities = tuple(base.parity(x) for x, _ in self.pairs)

        structure: Dict[Tuple[int, int], SparseVector] = {}
        for (x, y), bracket in base.structure.items():
            for a in range(m):
                for b in range(m):
                    product = coeff.multiply_basis(a, b)
                    if not product:
                        continue
                    out: SparseVector = {}
                    for z, c1 in bracket.items():
                        for d, c2 in product.items():
                            out = vec_axpy(out, c1 * c2, {z * m + d: ONE})
                    if out:
                        structure[(x * m + a, y * m + b)] = out

        weights = tuple(base.weights[x] for x, _ in self.pairs)
        super().__init__(SuperSpace(labels, parities), structure, weights, name=f"{base.name}*{coeff.name}")

    @property
    def rank(self) -> int:
        return len(self.weights[0])

    def pair_index(self, x: int, a: int) -> int:
        return x * self.coeff.dim + a

    def tensor(self, x: Mapping[int, Scalar], a: Mapping[int, Scalar]) -> SparseVector:
        """x (x) a for a base vector x and a coefficient vector a."""
        out: SparseVector = {}
        for i, c1 in x.items():
            for j, c2 in a.items():
                out = vec_axpy(out, c1 * c2, {self.pair_index(i, j): ONE})
        return out

    def embed(self, label: str, a: Optional[Mapping[int, Scalar]] = None) -> SparseVector:
        """label (x) a, defaulting to label (x) 1."""
        return self.tensor(self.base.basis_vector(label), self.coeff.unit if a is None else a)

    def role(self, g: int) -> str:
        """'negative', 'cartan' or 'positive' from the root weight of the base element."""
        w = self.weights[g].coords
        nonzero = [c for c in w if c]
        if not nonzero:
            return "cartan"
        return "positive" if nonzero[0] > 0 else "negative"

    def pbw_key(self, g: int) -> Tuple:
        x, a = self.pairs[g]
        w = self.weights[g]
        odd = self.parity(g)
        role = self.role(g)
        if role == "cartan":
            return (2 + odd, x, a)
        height = RootDatum.height(w) if role == "positive" else RootDatum.height(-w)
        return ((0 if role == "negative" else 4) + odd, height, w.coords, a)

    @cached_property
    def pbw_order(self) -> Tuple[int, ...]:
        """Basis indices in PBW order: n- even, n- odd, k, k', n+ even, n+ odd."""
        return tuple(sorted(range(self.dim), key=self.pbw_key))

    @cached_property
    def generators_by_role(self) -> Dict[str, Tuple[int, ...]]:
        roles: Dict[str, List[int]] = {"negative": [], "cartan": [], "positive": []}
        for g in self.pbw_order:
            roles[self.role(g)].append(g)
        return {k: tuple(v) for k, v in roles.items()}


def current_algebra(q: LieSuperAlgebra, a: CommAlgebra) -> CurrentAlgebra:
    return CurrentAlgebra(q, a)
