"""
Weight modules over q(n) (x) A.

Modules are finite matrices: one sparse operator per basis element of the
current algebra, acting on a basis of weight vectors.  Generalized Verma
modules are truncated at a depth C below the highest weight; every other
construction (local Weyl modules, irreducible quotients, cone truncations)
is a quotient of such a truncation by a submodule found with a worklist
closure.

Depth of mu below lambda is sum(c_i) for lambda - mu = sum c_i alpha_i.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from qweyl.core.config import settings
from qweyl.core.errors import (
    DepthOverflowError,
    DimensionMismatchError,
    NonDominantWeightError,
    NotHighestWeightError,
    VerificationError,
)
from qweyl.models import (
    CertificateInfo,
    CharacterEntry,
    GlobalRelationsReport,
    IdealReport,
    RelationResult,
    SpanningReport,
)
from qweyl.services.clifford import HighestWeightSpace, MapWeight, build_H
from qweyl.services.coeff import CommAlgebra, IdealSubspace, complex_numbers, largest_ideal_inside, unit_ideal
from qweyl.services.liesuper import (
    CurrentAlgebra,
    LieSuperAlgebra,
    RootDatum,
    WeightVector,
    build_q,
    current_algebra,
    even_label,
    q_basis_matrix,
    sl2_triple,
)
from qweyl.services.linalg import EchelonBasis, Matrix, SparseVector, Subspace, kernel, vec_axpy
from qweyl.services.pbw import EnvelopingAlgebra, Word
from qweyl.services.scalars import ONE, ZERO, Scalar
from qweyl.services.superspace import EVEN, ODD, SuperSpace, koszul_sign

logger = logging.getLogger(__name__)


# ======================================================================
# Context
# ======================================================================
@dataclass(frozen=True, eq=False)
class CurrentContext:
    q: LieSuperAlgebra
    rd: RootDatum
    algebra: CurrentAlgebra
    envelope: EnvelopingAlgebra

    @property
    def n(self) -> int:
        return self.rd.n

    @property
    def coeff(self) -> CommAlgebra:
        return self.algebra.coeff

    def unit_operator(self, label: str, module: "WeightModule") -> Matrix:
        """Action of label (x) 1 on the module."""
        return module.operator(self.algebra.embed(label))


@lru_cache(maxsize=None)
def current_context(n: int, coeff: CommAlgebra) -> CurrentContext:
    q, rd = build_q(n)
    algebra = current_algebra(q, coeff)
    return CurrentContext(q, rd, algebra, EnvelopingAlgebra(algebra))


@lru_cache(maxsize=None)
def field_algebra() -> CommAlgebra:
    """The shared copy of C used for A = C computations."""
    return complex_numbers()


# ======================================================================
# Characters
# ======================================================================
@dataclass(frozen=True)
class Character:
    counts: Mapping[WeightVector, Tuple[int, int]]

    @classmethod
    def of(cls, counts: Mapping[WeightVector, Tuple[int, int]]) -> "Character":
        return cls({w: c for w, c in counts.items() if c != (0, 0)})

    @property
    def total(self) -> Tuple[int, int]:
        return sum(e for e, _ in self.counts.values()), sum(o for _, o in self.counts.values())

    @property
    def support(self) -> List[WeightVector]:
        return sorted(self.counts, reverse=True)

    def swap(self) -> "Character":
        return Character({w: (o, e) for w, (e, o) in self.counts.items()})

    def equal_up_to_parity(self, other: "Character") -> bool:
        return self == other or self.swap() == other

    def is_weyl_invariant(self) -> bool:
        """Total weight-space dimension is constant on S_n orbits."""
        for w, (e, o) in self.counts.items():
            for perm in itertools.permutations(range(len(w))):
                image = self.counts.get(w.permuted(perm), (0, 0))
                if sum(image) != e + o:
                    return False
        return True

    def within_dominance_hull(self, lam: WeightVector) -> bool:
        return all(w.dominance_below(lam) for w in self.counts)

    def convolve(self, other: "Character") -> "Character":
        out: Dict[WeightVector, Tuple[int, int]] = {}
        for (w1, (e1, o1)), (w2, (e2, o2)) in itertools.product(self.counts.items(), other.counts.items()):
            e, o = out.get(w1 + w2, (0, 0))
            out[w1 + w2] = (e + e1 * e2 + o1 * o2, o + e1 * o2 + o1 * e2)
        return Character.of(out)

    def __add__(self, other: "Character") -> "Character":
        out = dict(self.counts)
        for w, (e, o) in other.counts.items():
            e0, o0 = out.get(w, (0, 0))
            out[w] = (e0 + e, o0 + o)
        return Character.of(out)

    def to_entries(self) -> List[CharacterEntry]:
        return [CharacterEntry(weight=list(w.coords), even=self.counts[w][0], odd=self.counts[w][1]) for w in self.support]


# ======================================================================
# Weight modules
# ======================================================================
@dataclass(frozen=True, eq=False)
class WeightModule:
    algebra: CurrentAlgebra
    highest: WeightVector
    weights: Tuple[WeightVector, ...]
    parities: Tuple[int, ...]
    # one operator per basis element of the current algebra
    action: Tuple[Matrix, ...]
    labels: Tuple[str, ...]
    # depth C of the Verma truncation this module was cut from; None when exact
    depth_window: Optional[int] = None
    certificate: Optional[CertificateInfo] = None
    discarded: int = 0

    def __post_init__(self) -> None:
        d = len(self.weights)
        if not (len(self.parities) == len(self.labels) == d):
            raise DimensionMismatchError("One weight, parity and label per basis vector")
        if len(self.action) != self.algebra.dim:
            raise DimensionMismatchError("One operator per current algebra basis element")
        if any(m.shape != (d, d) for m in self.action):
            raise DimensionMismatchError(f"Action matrices must be {d}x{d}")

    @property
    def total_dim(self) -> int:
        return len(self.weights)

    @property
    def dim(self) -> Tuple[int, int]:
        odd = sum(self.parities)
        return self.total_dim - odd, odd

    @property
    def rank(self) -> int:
        return len(self.highest)

    @cached_property
    def space(self) -> SuperSpace:
        return SuperSpace(self.labels, self.parities)

    @cached_property
    def blocks(self) -> Dict[Tuple[WeightVector, int], Tuple[int, ...]]:
        out: Dict[Tuple[WeightVector, int], List[int]] = {}
        for i, (w, p) in enumerate(zip(self.weights, self.parities)):
            out.setdefault((w, p), []).append(i)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def top(self) -> Tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w == self.highest)

    def depth(self, i: int) -> Optional[int]:
        return self.weights[i].cone_depth(self.highest)

    def character(self) -> Character:
        counts: Dict[WeightVector, Tuple[int, int]] = {}
        for w, p in zip(self.weights, self.parities):
            e, o = counts.get(w, (0, 0))
            counts[w] = (e + 1 - p, o + p)
        return Character.of(counts)

    def act(self, g: int, v: Mapping[int, Scalar]) -> SparseVector:
        return self.action[g].apply(v)

    def operator(self, x: Mapping[int, Scalar]) -> Matrix:
        """Action of a current-algebra vector."""
        out = Matrix.zeros(self.total_dim, self.total_dim)
        for g, c in x.items():
            out = out + self.action[g].scale(c)
        return out

    def vector_weight(self, v: Mapping[int, Scalar]) -> Optional[Tuple[WeightVector, int]]:
        keys = {(self.weights[i], self.parities[i]) for i in v}
        return keys.pop() if len(keys) == 1 else None


# ======================================================================
# Closures and quotients
# ======================================================================
def _homogeneous_parts(m: WeightModule, v: Mapping[int, Scalar]) -> List[SparseVector]:
    parts: Dict[Tuple[WeightVector, int], SparseVector] = {}
    for i, c in v.items():
        parts.setdefault((m.weights[i], m.parities[i]), {})[i] = c
    return list(parts.values())


def submodule_generated(m: WeightModule, seeds: Iterable[Mapping[int, Scalar]]) -> Subspace:
    """Closure of the seeds under every generator, within the module's window."""
    basis = EchelonBasis(m.total_dim)
    queue: deque = deque()
    for seed in seeds:
        for part in _homogeneous_parts(m, seed):
            added = basis.add(part)
            if added is not None:
                queue.append(added)
    while queue:
        v = queue.popleft()
        for g in range(m.algebra.dim):
            image = m.act(g, v)
            if image:
                added = basis.add(image)
                if added is not None:
                    queue.append(added)
    logger.debug("submodule closure: dim %d of %d", len(basis), m.total_dim)
    return basis.to_subspace()


def quotient(m: WeightModule, n: Subspace, **overrides) -> WeightModule:
    """M / N on the non-pivot coordinates of N's echelon basis."""
    keep = n.quotient_basis()
    position = {old: new for new, old in enumerate(keep)}
    actions = []
    for op in m.action:
        entries: Dict[Tuple[int, int], Scalar] = {}
        for new_col, old_col in enumerate(keep):
            image = n.reduce(op.column(old_col))
            for row, value in image.items():
                entries[(position[row], new_col)] = value
        actions.append(Matrix(len(keep), len(keep), entries))
    fields = dict(
        algebra=m.algebra,
        highest=m.highest,
        weights=tuple(m.weights[i] for i in keep),
        parities=tuple(m.parities[i] for i in keep),
        action=tuple(actions),
        labels=tuple(m.labels[i] for i in keep),
        depth_window=m.depth_window,
        discarded=m.discarded,
    )
    fields.update(overrides)
    return WeightModule(**fields)


def restrict_to_submodule(m: WeightModule, n: Subspace) -> WeightModule:
    """N as a module in the basis of its echelon rows."""
    rows = list(n.rows)
    weights, parities = [], []
    for row in rows:
        key = m.vector_weight(row)
        if key is None:
            raise VerificationError("Submodule basis vector is not homogeneous")
        weights.append(key[0])
        parities.append(key[1])
    actions = []
    for op in m.action:
        entries: Dict[Tuple[int, int], Scalar] = {}
        for col, row in enumerate(rows):
            image = op.apply(row)
            if n.reduce(image):
                raise VerificationError("Subspace is not stable under the action")
            for k, value in n.coordinates(image).items():
                entries[(k, col)] = value
        actions.append(Matrix(len(rows), len(rows), entries))
    return WeightModule(
        algebra=m.algebra,
        highest=m.highest,
        weights=tuple(weights),
        parities=tuple(parities),
        action=tuple(actions),
        labels=tuple(f"n{k}" for k in range(len(rows))),
        depth_window=m.depth_window,
    )


# ======================================================================
# Verma modules
# ======================================================================
def negative_monomials(ctx: CurrentContext, depth: int) -> List[Word]:
    """Normal words in n- (x) A of depth at most ``depth``, shallow first."""
    alg = ctx.algebra
    gens = alg.generators_by_role["negative"]
    heights = [RootDatum.height(-alg.weights[g]) for g in gens]
    out: List[Tuple[int, Word]] = []

    def grow(start: int, used: int, prefix: Word) -> None:
        out.append((used, prefix))
        for k in range(start, len(gens)):
            h = heights[k]
            if used + h > depth:
                continue
            g = gens[k]
            # odd letters appear at most once
            grow(k + 1 if alg.parity(g) == ODD else k, used + h, prefix + (g,))

    grow(0, 0, ())
    out.sort(key=lambda item: (item[0], tuple(ctx.envelope.position[g] for g in item[1])))
    return [w for _, w in out]


def _word_depth(ctx: CurrentContext, w: Word) -> int:
    return sum(RootDatum.height(-ctx.algebra.weights[g]) for g in w)


def _apply_cartan_word(ctx: CurrentContext, h: HighestWeightSpace, cartan: Word, vector: SparseVector) -> SparseVector:
    """Cartan word acting on H, rightmost letter first."""
    alg = ctx.algebra
    position = {x: i for i, x in enumerate(ctx.q.index(label) for label in ctx.rd.cartan_labels[0])}
    for g in reversed(cartan):
        x, a = alg.pairs[g]
        if alg.parity(g) == EVEN:
            vector = {k: c * h.even_value(position[x], {a: ONE}) for k, c in vector.items()}
            vector = {k: c for k, c in vector.items() if c}
        else:
            vector = h.odd_actions[(x, a)].apply(vector)
        if not vector:
            break
    return vector


def _induced_module(ctx: CurrentContext, psi: MapWeight, h: HighestWeightSpace, depth: int) -> WeightModule:
    monomials = negative_monomials(ctx, depth)
    env = ctx.envelope
    h_dim = h.space.total_dim
    index = {(w, k): i * h_dim + k for i, w in enumerate(monomials) for k in range(h_dim)}
    lam = psi.lam

    weights, parities, labels = [], [], []
    for w in monomials:
        wt = lam + env.weight(w)
        for k in range(h_dim):
            weights.append(wt)
            parities.append((env.parity(w) + h.space.parities[k]) % 2)
            labels.append(f"{env.monomial(w)}|{h.space.labels[k]}")

    discarded = 0
    actions = []
    for g in range(ctx.algebra.dim):
        entries: Dict[Tuple[int, int], Scalar] = {}
        for w in monomials:
            terms = env.straighten((g,) + w)
            for word, coeff in terms.items():
                neg, cartan, pos = env.split(word)
                if pos:
                    continue
                if _word_depth(ctx, neg) > depth:
                    discarded += 1
                    continue
                for k in range(h_dim):
                    image = _apply_cartan_word(ctx, h, cartan, {k: ONE})
                    col = index[(w, k)]
                    for k2, c in image.items():
                        row = index[(neg, k2)]
                        entries[(row, col)] = entries.get((row, col), ZERO) + coeff * c
        actions.append(Matrix(len(weights), len(weights), entries))
    if discarded:
        logger.debug("verma depth %d: discarded %d terms below the window", depth, discarded)
    return WeightModule(
        algebra=ctx.algebra,
        highest=lam,
        weights=tuple(weights),
        parities=tuple(parities),
        action=tuple(actions),
        labels=tuple(labels),
        depth_window=depth,
        discarded=discarded,
    )


def verma_truncated(psi: MapWeight, depth: int) -> WeightModule:
    if depth < 0:
        raise ValueError("Verma depth must be >= 0")
    if not psi.lam.is_dominant():
        raise NonDominantWeightError(f"{psi.lam} is not dominant")
    ctx = current_context(psi.n, psi.algebra)
    h = build_H(psi, ctx.q, ctx.rd, psi.algebra)
    return _induced_module(ctx, psi, h, depth)


# ======================================================================
# Local Weyl modules
# ======================================================================
def _f_power_seeds(ctx: CurrentContext, module: WeightModule, lam: WeightVector) -> List[SparseVector]:
    """f_i^(lam(h_i)+1) applied to every basis vector of the top."""
    seeds = []
    for i in range(1, ctx.n):
        f = ctx.unit_operator(even_label(i + 1, i), module)
        for k in module.top:
            v: SparseVector = {k: ONE}
            for _ in range(lam.h_value(i) + 1):
                v = f.apply(v)
            seeds.append(v)
    return seeds


def _seed_depth(lam: WeightVector) -> int:
    return max((lam.h_value(i) + 1 for i in range(1, len(lam))), default=0)


def _band_is_empty(m: WeightModule, depth: int, margin: int) -> bool:
    return all(not (depth - margin < (m.depth(i) or 0) <= depth) for i in range(m.total_dim))


def local_weyl(psi: MapWeight) -> WeightModule:
    """
    W_loc(psi), computed in a truncated Verma module whose depth doubles
    until the quotient vanishes on a band of width n-1 at the bottom.
    """
    lam = psi.lam
    if not lam.in_lambda_plus():
        raise NonDominantWeightError(f"{lam} is not in Lambda^+")
    n = psi.n
    margin = n - 1
    ctx = current_context(n, psi.algebra)
    h = build_H(psi, ctx.q, ctx.rd, psi.algebra)

    depth = max((lam[0] - lam[n - 1]) * n, margin, _seed_depth(lam))
    attempts = 0
    while True:
        if depth > settings.depth_cap:
            raise DepthOverflowError(f"local Weyl module for {lam} not certified below depth cap {settings.depth_cap}")
        attempts += 1
        verma = _induced_module(ctx, psi, h, depth)
        seeds = _f_power_seeds(ctx, verma, lam)
        relations = submodule_generated(verma, seeds)
        module = quotient(verma, relations)
        if _band_is_empty(module, depth, margin):
            break
        logger.info("local Weyl %s: depth %d not certified, doubling", lam, depth)
        if depth == settings.depth_cap:
            raise DepthOverflowError(f"local Weyl module for {lam} not certified below depth cap {settings.depth_cap}")
        depth = min(2 * depth, settings.depth_cap)

    for w in set(module.weights):
        if not w.dominance_below(lam):
            raise VerificationError(f"weight {w} of the local Weyl module lies outside the dominance hull of {lam}")
    info = CertificateInfo(depth=depth, band=(depth - margin, depth), attempts=attempts, certified=True)
    logger.info("local Weyl %s certified at depth %d: dims %s", lam, depth, module.dim)
    return replace(module, depth_window=None, certificate=info, discarded=0)


def bar_L(lam: Sequence[int]) -> WeightModule:
    """local_weyl over A = C."""
    psi = MapWeight.from_lambda(lam, field_algebra())
    return local_weyl(psi)


# ======================================================================
# Irreducible quotients
# ======================================================================
def _maximal_submodule(m: WeightModule) -> EchelonBasis:
    """v in N iff every raising generator sends v into N; N meets the top in 0."""
    raising = m.algebra.generators_by_role["positive"]
    found = EchelonBasis(m.total_dim)
    order = sorted(m.blocks, key=lambda key: (key[0].cone_depth(m.highest) or 0, key[0], key[1]))
    for key in order:
        if key[0] == m.highest:
            continue
        indices = m.blocks[key]
        columns = []
        for i in indices:
            column: SparseVector = {}
            for slot, g in enumerate(raising):
                residual = found.reduce(m.action[g].column(i))
                for row, value in residual.items():
                    column[slot * m.total_dim + row] = value
            columns.append(column)
        constraints = Matrix.from_column_vectors(columns, len(raising) * m.total_dim)
        for k in kernel(constraints):
            found.add({indices[j]: c for j, c in k.items()})
    return found


def irreducible_quotient(m: WeightModule) -> WeightModule:
    top = [{i: ONE} for i in m.top]
    if not top or submodule_generated(m, top).dim != m.total_dim:
        raise NotHighestWeightError("Module is not generated by its highest weight space")
    maximal = _maximal_submodule(m).to_subspace()
    result = quotient(m, maximal)
    if len(_maximal_submodule(result)):
        raise VerificationError("Irreducible quotient still has a proper submodule")
    if result.depth_window is not None:
        margin = m.rank - 1
        if _band_is_empty(result, result.depth_window, margin):
            result = replace(result, depth_window=None)
    logger.info("irreducible quotient of %s: dims %s", m.highest, result.dim)
    return result


def check_irreducible(m: WeightModule) -> bool:
    """No nonzero submodule avoids the top, and the top generates."""
    top = [{i: ONE} for i in m.top]
    return bool(top) and submodule_generated(m, top).dim == m.total_dim and not len(_maximal_submodule(m))


# ======================================================================
# Coefficient ideals
# ======================================================================
def _top_image(m: WeightModule, x: Mapping[int, Scalar]) -> List[SparseVector]:
    op = m.operator(x)
    return [op.column(i) for i in m.top]


def _annihilator(m: WeightModule, base_labels: Sequence[str]) -> Subspace:
    """{a in A : (x (x) a) kills the top for every listed x}."""
    alg = m.algebra
    dim_a = alg.coeff.dim
    columns = []
    for j in range(dim_a):
        column: SparseVector = {}
        for slot, label in enumerate(base_labels):
            x = alg.embed(label, {j: ONE})
            for t, image in enumerate(_top_image(m, x)):
                for row, value in image.items():
                    column[(slot * len(m.top) + t) * m.total_dim + row] = value
        columns.append(column)
    constraints = Matrix.from_column_vectors(columns, len(base_labels) * max(len(m.top), 1) * m.total_dim)
    return Subspace.span(kernel(constraints), dim_a)


def _kills_top(m: WeightModule, base_labels: Sequence[str], ideal: IdealSubspace) -> bool:
    alg = m.algebra
    for label in base_labels:
        for c in ideal.basis():
            if any(_top_image(m, alg.embed(label, c))):
                return False
    return True


def compute_I_psi(w: WeightModule, psi: MapWeight, a: CommAlgebra) -> Tuple[IdealSubspace, int]:
    ctx = current_context(psi.n, a)
    if w.algebra is not ctx.algebra:
        raise DimensionMismatchError("Module does not live over the current algebra of psi")
    even_cartan = list(ctx.rd.cartan_labels[0])
    s = _annihilator(w, even_cartan)
    ideal = largest_ideal_inside(s, a)

    negative = [label for alpha, pair in ctx.rd.root_space.items() if alpha not in ctx.rd.positive_roots for label in pair]
    every = list(ctx.q.labels)
    for k in range(1, a.dim + 2):
        power = ideal.power(k)
        if _kills_top(w, negative, power):
            if not _kills_top(w, every, power):
                raise VerificationError(f"(q (x) I^{k}) does not kill the top space")
            logger.info("I_psi has codim %d, n_psi = %d", ideal.codim, k)
            return ideal, k
    raise VerificationError("No power of I_psi kills the top space through n-")


def ideal_report(w: WeightModule, psi: MapWeight, a: CommAlgebra) -> IdealReport:
    ideal, n_psi = compute_I_psi(w, psi, a)
    power = ideal.power(n_psi)
    ctx = current_context(psi.n, a)
    meet = unit_ideal(a)
    for root_ideal in root_ideals(w, ctx.rd).values():
        meet = meet.intersect(root_ideal)
    return IdealReport(
        basis=[[str(v.get(k, ZERO)) for k in range(a.dim)] for v in ideal.basis()],
        codim=ideal.codim,
        n_psi=n_psi,
        power_codim=power.codim,
        annihilates_top=_kills_top(w, list(ctx.q.labels), power),
        root_meet_codim=meet.codim,
        root_meet_kills_odd_cartan=_kills_top(w, list(ctx.rd.cartan_labels[1]), meet),
    )


def root_ideals(w: WeightModule, rd: RootDatum) -> Dict[WeightVector, IdealSubspace]:
    """Per positive root alpha the largest ideal I with (y_alpha (x) I) killing the top."""
    a = w.algebra.coeff
    out = {}
    for alpha in rd.positive_roots:
        triple = sl2_triple(rd, alpha)
        out[alpha] = largest_ideal_inside(_annihilator(w, [triple.y]), a)
    return out


def height_annihilation_check(w: WeightModule, rd: RootDatum, ideal: IdealSubspace) -> Dict[WeightVector, bool]:
    """(q_{-alpha} (x) I^{ht alpha}) kills the top, per positive root."""
    out = {}
    for alpha in rd.positive_roots:
        labels = list(rd.root_space[-alpha])
        out[alpha] = _kills_top(w, labels, ideal.power(RootDatum.height(alpha)))
    return out


def spanning_bound_check(
    w: WeightModule, rd: RootDatum, alpha: WeightVector, a: SparseVector, max_exponent: Optional[int] = None
) -> SpanningReport:
    """
    Is every (y_alpha (x) a^s) w in the span of (y_alpha (x) a^l) w for
    l < lambda(h_alpha)?  The inclusive reading l <= lambda(h_alpha) is
    reported alongside.
    """
    alg = w.algebra
    coeff = alg.coeff
    triple = sl2_triple(rd, alpha)
    bound = w.highest[alpha.coords.index(1)] - w.highest[alpha.coords.index(-1)]
    top_max = max_exponent if max_exponent is not None else max(coeff.dim, bound + 1)

    def images(s: int) -> List[SparseVector]:
        return _top_image(w, alg.embed(triple.y, coeff.power(a, s)))

    strict = Subspace.span([v for l in range(bound) for v in images(l)], w.total_dim)
    inclusive = Subspace.span([v for l in range(bound + 1) for v in images(l)], w.total_dim)
    targets = [v for s in range(top_max + 1) for v in images(s)]
    return SpanningReport(
        root=list(alpha.coords),
        bound=bound,
        max_exponent=top_max,
        strict_holds=all(strict.contains(v) for v in targets),
        inclusive_holds=all(inclusive.contains(v) for v in targets),
    )


# ======================================================================
# Cone truncation and relation checks
# ======================================================================
def truncate_to_cone(m: WeightModule, nu: WeightVector) -> WeightModule:
    """M^nu: M modulo the submodule generated by weight spaces outside nu - Q+."""
    outside = [{i: ONE} for i, w in enumerate(m.weights) if w.cone_depth(nu) is None]
    if not outside:
        return m
    return quotient(m, submodule_generated(m, outside))


def top_annihilation_check(m: WeightModule) -> Dict[int, bool]:
    """f_i^(lambda(h_i)+1) kills every top vector, per simple index i."""
    ctx = current_context(m.rank, m.algebra.coeff)
    out = {}
    for i in range(1, m.rank):
        f = ctx.unit_operator(even_label(i + 1, i), m)
        ok = True
        for k in m.top:
            v: SparseVector = {k: ONE}
            for _ in range(m.highest.h_value(i) + 1):
                v = f.apply(v)
            ok = ok and not v
        out[i] = ok
    return out


def check_global_relations(w: WeightModule, lam: WeightVector, a: CommAlgebra) -> GlobalRelationsReport:
    ctx = current_context(len(lam), a)
    if w.algebra is not ctx.algebra:
        raise DimensionMismatchError("Module does not live over q(n) (x) A")
    alg = ctx.algebra
    results: List[RelationResult] = []
    top = [i for i, wt in enumerate(w.weights) if wt == lam]
    for k in top:
        v = {k: ONE}
        for g in alg.generators_by_role["positive"]:
            image = w.act(g, v)
            results.append(
                RelationResult(
                    relation="(n+ (x) A) w = 0",
                    indices=[k, g],
                    passed=not image,
                    detail=None if not image else f"{alg.labels[g]} moves {w.labels[k]}",
                )
            )
        for i, label in enumerate(ctx.rd.cartan_labels[0]):
            image = w.operator(alg.embed(label)).apply(v)
            expected = {k: Scalar.of(lam[i])} if lam[i] else {}
            results.append(
                RelationResult(
                    relation="h w = lambda(h) w",
                    indices=[k, i + 1],
                    passed=image == expected,
                    detail=None if image == expected else f"{label} does not act by {lam[i]}",
                )
            )
        for i in range(1, len(lam)):
            f = w.operator(alg.embed(even_label(i + 1, i)))
            image = v
            for _ in range(lam.h_value(i) + 1):
                image = f.apply(image)
            results.append(
                RelationResult(
                    relation="f_i^(lambda(h_i)+1) w = 0",
                    indices=[k, i],
                    passed=not image,
                    detail=None if not image else f"f_{i} power does not kill {w.labels[k]}",
                )
            )
    return GlobalRelationsReport(highest_weight=list(lam.coords), results=results)


def check_module_axioms(m: WeightModule) -> List[str]:
    """
    Bracket compatibility and weight compatibility on basis vectors.  For a
    depth-truncated module only the interior 2(n-1) above the window is exact.
    """
    alg = m.algebra
    if m.depth_window is None:
        interior = list(range(m.total_dim))
    else:
        limit = m.depth_window - 2 * (m.rank - 1)
        interior = [i for i in range(m.total_dim) if (m.depth(i) or 0) <= limit]
    failures = []

    for g in range(alg.dim):
        shift = alg.weights[g]
        for (row, col), _ in m.action[g].items():
            if m.weights[row] != m.weights[col] + shift:
                failures.append(f"{alg.labels[g]} breaks weights at {m.labels[col]}")
                break
            if (m.parities[row] - m.parities[col]) % 2 != alg.parity(g):
                failures.append(f"{alg.labels[g]} breaks parity at {m.labels[col]}")
                break
    ctx = current_context(m.rank, alg.coeff)
    for i, label in enumerate(ctx.rd.cartan_labels[0]):
        op = m.operator(alg.embed(label))
        for v in interior:
            if op.column(v) != ({v: Scalar.of(m.weights[v][i])} if m.weights[v][i] else {}):
                failures.append(f"{label} does not act by the weight on {m.labels[v]}")

    for x, y in itertools.product(range(alg.dim), repeat=2):
        ax, ay = m.action[x], m.action[y]
        bracket = m.operator(alg.bracket_basis(x, y))
        sign = koszul_sign(alg.parity(x), alg.parity(y))
        for v in interior:
            lhs = bracket.column(v)
            rhs = vec_axpy(ax.apply(ay.column(v)), -sign, ay.apply(ax.column(v)))
            if lhs != rhs:
                failures.append(f"[{alg.labels[x]}, {alg.labels[y]}] fails on {m.labels[v]}")
                break
    return failures


# ======================================================================
# Oracles and constructions
# ======================================================================
def evaluation_module(current: CurrentAlgebra, point: int) -> WeightModule:
    """C^{n|n} with x (x) b acting by b(point) times the matrix of x."""
    n = current.rank
    coeff = current.coeff
    values = coeff.points[point]
    actions = []
    for g in range(current.dim):
        x, b = current.pairs[g]
        scale = values[b]
        entries = {}
        if scale:
            block = q_basis_matrix(n, x)
            for r, c in zip(*block.nonzero()):
                entries[(int(r), int(c))] = scale * int(block[r, c])
        actions.append(Matrix(2 * n, 2 * n, entries))
    weights = tuple(WeightVector.epsilon(n, i) for i in range(1, n + 1)) * 2
    return WeightModule(
        algebra=current,
        highest=WeightVector.epsilon(n, 1),
        weights=weights,
        parities=(EVEN,) * n + (ODD,) * n,
        action=tuple(actions),
        labels=tuple(f"v{i}" for i in range(1, n + 1)) + tuple(f"v{i}'" for i in range(1, n + 1)),
    )


def direct_sum(m: WeightModule, n: WeightModule) -> WeightModule:
    if m.algebra is not n.algebra:
        raise DimensionMismatchError("Summands live over different algebras")
    shift = m.total_dim
    size = shift + n.total_dim
    actions = []
    for a, b in zip(m.action, n.action):
        entries = dict(a.items())
        entries.update({(r + shift, c + shift): v for (r, c), v in b.items()})
        actions.append(Matrix(size, size, entries))
    windows = [w for w in (m.depth_window, n.depth_window) if w is not None]
    return WeightModule(
        algebra=m.algebra,
        highest=m.highest,
        weights=m.weights + n.weights,
        parities=m.parities + n.parities,
        action=tuple(actions),
        labels=tuple(f"{l}[0]" for l in m.labels) + tuple(f"{l}[1]" for l in n.labels),
        depth_window=min(windows) if windows else None,
    )


def parity_shift(m: WeightModule) -> WeightModule:
    return WeightModule(
        algebra=m.algebra,
        highest=m.highest,
        weights=m.weights,
        parities=tuple(1 - p for p in m.parities),
        action=m.action,
        labels=m.labels,
        depth_window=m.depth_window,
        certificate=m.certificate,
    )
