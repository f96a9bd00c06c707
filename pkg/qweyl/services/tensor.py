"""
Tensor products of weight modules, odd endomorphisms, the irreducible half
of a product of two Q-type modules, and isomorphism tests up to parity.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from qweyl.core.errors import (
    AlgebraMismatchError,
    HypothesisViolationError,
    NonDominantWeightError,
    NonScalarSquareError,
    VerificationError,
)
from qweyl.models import IsoReport, TensorTheoremReport
from qweyl.services.clifford import MapWeight
from qweyl.services.linalg import Matrix, Subspace, is_invertible, kernel
from qweyl.services.scalars import I, ONE, Scalar, sqrt
from qweyl.services.superspace import EVEN, ODD, GradedMap, intertwiners
from qweyl.services.weylmod import (
    WeightModule,
    check_module_axioms,
    compute_I_psi,
    direct_sum,
    local_weyl,
    parity_shift,
    restrict_to_submodule,
)

logger = logging.getLogger(__name__)


def _parity_signs(m: WeightModule) -> Matrix:
    return Matrix.diagonal([-ONE if p else ONE for p in m.parities])


def _check_same_algebra(m: WeightModule, n: WeightModule) -> None:
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError("Modules live over different current algebras")


# ======================================================================
# Tensor products
# ======================================================================
def module_tensor(m: WeightModule, n: WeightModule, verify: bool = True) -> WeightModule:
    """x (m (x) n) = (x m) (x) n + (-1)^{|x||m|} m (x) (x n)."""
    _check_same_algebra(m, n)
    alg = m.algebra
    id_n = Matrix.identity(n.total_dim)
    signs = _parity_signs(m)
    id_m = Matrix.identity(m.total_dim)
    actions = []
    for g in range(alg.dim):
        left = m.action[g].kron(id_n)
        right = (signs if alg.parity(g) == ODD else id_m).kron(n.action[g])
        actions.append(left + right)
    windows = [w for w in (m.depth_window, n.depth_window) if w is not None]
    product = WeightModule(
        algebra=alg,
        highest=m.highest + n.highest,
        weights=tuple(a + b for a in m.weights for b in n.weights),
        parities=tuple((p + q) % 2 for p in m.parities for q in n.parities),
        action=tuple(actions),
        labels=tuple(f"{a}(x){b}" for a in m.labels for b in n.labels),
        depth_window=min(windows) if windows else None,
    )
    if verify:
        failures = check_module_axioms(product)
        if failures:
            raise VerificationError(f"Tensor product violates the module axioms: {failures[0]}")
    return product


# ======================================================================
# Odd endomorphisms
# ======================================================================
@dataclass(frozen=True, eq=False)
class OddEndomorphism:
    module: WeightModule
    map: GradedMap
    # c with map^2 = c id, None when the square is not scalar
    square_scalar: Optional[Scalar]


def _same_weight(m: WeightModule, n: WeightModule):
    return lambda i, k: n.weights[i] == m.weights[k]


def _scalar_of(square: Matrix) -> Optional[Scalar]:
    d = square.rows
    if d == 0:
        return None
    c = square[0, 0]
    return c if square == Matrix.identity(d).scale(c) else None


def odd_endomorphisms(m: WeightModule) -> List[OddEndomorphism]:
    alg = m.algebra
    parities = [alg.parity(g) for g in range(alg.dim)]
    maps = intertwiners(m.space, m.space, m.action, m.action, parities, degree=ODD, allowed=_same_weight(m, m))
    out = []
    for phi in maps:
        out.append(OddEndomorphism(m, GradedMap(m.space, m.space, phi, ODD), _scalar_of(phi @ phi)))
    logger.debug("odd endomorphisms of a %s module: %d", m.dim, len(out))
    return out


def _normalized(phi: OddEndomorphism) -> Matrix:
    """phi scaled so that its square is -1."""
    if phi.square_scalar is None or not phi.square_scalar:
        raise NonScalarSquareError("Odd endomorphism does not square to a nonzero scalar")
    return phi.map.matrix.scale(sqrt(-ONE / phi.square_scalar))


def _hat_involution(m: WeightModule, n: WeightModule) -> Optional[Matrix]:
    phis_m, phis_n = odd_endomorphisms(m), odd_endomorphisms(n)
    if not phis_m or not phis_n:
        return None
    phi1 = _normalized(phis_m[0]).scale(I)
    phi2 = _normalized(phis_n[0])
    # (phi1 (x) phi2)(a (x) b) = (-1)^{|a|} phi1 a (x) phi2 b
    involution = (phi1 @ _parity_signs(m)).kron(phi2)
    d = involution.rows
    if involution @ involution != Matrix.identity(d):
        raise VerificationError("Normalized tensor of odd endomorphisms is not an involution")
    return involution


def _eigenspace(j: Matrix, value: Scalar) -> Subspace:
    shifted = j - Matrix.identity(j.rows).scale(value)
    return Subspace.span(kernel(shifted), j.rows)


def hat_tensor(m: WeightModule, n: WeightModule) -> WeightModule:
    """
    +1 eigenspace of the normalized involution on M (x) N, or M (x) N itself
    when either factor has no odd endomorphism.
    """
    product = module_tensor(m, n)
    j = _hat_involution(m, n)
    if j is None:
        return product
    for op in product.action:
        if j @ op != op @ j:
            raise VerificationError("Involution does not commute with the action")
    return restrict_to_submodule(product, _eigenspace(j, ONE))


@dataclass(frozen=True, eq=False)
class HatSplit:
    plus: WeightModule
    minus: WeightModule
    isomorphism: "IsoResult"

    @property
    def holds(self) -> bool:
        return self.isomorphism.kind != "not_iso" and self.plus.total_dim == self.minus.total_dim


def hat_split(m: WeightModule, n: WeightModule, seed: int = 0) -> Optional[HatSplit]:
    """M (x) N as the sum of the two eigenspaces, each checked against the other."""
    product = module_tensor(m, n)
    j = _hat_involution(m, n)
    if j is None:
        return None
    plus = restrict_to_submodule(product, _eigenspace(j, ONE))
    minus = restrict_to_submodule(product, _eigenspace(j, -ONE))
    if plus.total_dim + minus.total_dim != product.total_dim:
        raise VerificationError("Eigenspaces of the involution do not span the tensor product")
    return HatSplit(plus, minus, is_isomorphic_up_to_parity(plus, minus, seed=seed))


# ======================================================================
# Isomorphism tests
# ======================================================================
@dataclass(frozen=True, eq=False)
class IsoResult:
    kind: str
    witness: Optional[Matrix] = None

    def report(self) -> IsoReport:
        return IsoReport(kind=self.kind, witness_shape=self.witness.shape if self.witness is not None else None)


def _invertible_combination(maps: Sequence[Matrix], seed: int) -> Optional[Matrix]:
    def combine(coeffs: Sequence[int]) -> Matrix:
        out = Matrix.zeros(maps[0].rows, maps[0].cols)
        for c, s in zip(coeffs, maps):
            if c:
                out = out + s.scale(c)
        return out

    candidates = [[k + 1 for k in range(len(maps))]]
    rng = random.Random(seed)
    candidates += [[rng.randint(-5, 5) for _ in maps] for _ in range(8)]
    candidates += [[1 if k == j else 0 for k in range(len(maps))] for j in range(len(maps))]
    for coeffs in candidates:
        t = combine(coeffs)
        if is_invertible(t):
            return t
    return None


def _even_isomorphism(source: WeightModule, target: WeightModule, seed: int) -> Optional[Matrix]:
    if source.total_dim != target.total_dim or source.character() != target.character():
        return None
    alg = source.algebra
    parities = [alg.parity(g) for g in range(alg.dim)]
    maps = intertwiners(
        source.space,
        target.space,
        source.action,
        target.action,
        parities,
        degree=EVEN,
        allowed=_same_weight(source, target),
    )
    if not maps:
        return None
    return _invertible_combination(maps, seed)


def is_isomorphic_up_to_parity(m: WeightModule, n: WeightModule, seed: int = 0) -> IsoResult:
    _check_same_algebra(m, n)
    cm, cn = m.character(), n.character()
    if cm == cn:
        witness = _even_isomorphism(m, n, seed)
        if witness is not None:
            return IsoResult("iso", witness)
    if cm.swap() == cn:
        witness = _even_isomorphism(parity_shift(m), n, seed)
        if witness is not None:
            return IsoResult("iso_after_pi", witness)
    return IsoResult("not_iso")


# ======================================================================
# Tensor product theorem
# ======================================================================
def verify_tensor_theorem(psi1: MapWeight, psi2: MapWeight, seed: int = 0) -> TensorTheoremReport:
    """
    W(psi1) (x) W(psi2) is W(psi1 + psi2) or two copies of it when the
    ideals I_psi1^n1 and I_psi2^n2 are comaximal.
    """
    lam1, lam2 = psi1.lam, psi2.lam
    total = psi1 + psi2
    for lam in (lam1, lam2, total.lam):
        if not lam.in_lambda_plus():
            raise NonDominantWeightError(f"{lam} is not in Lambda^+")
    a = psi1.algebra

    w1, w2 = local_weyl(psi1), local_weyl(psi2)
    ideal1, n1 = compute_I_psi(w1, psi1, a)
    ideal2, n2 = compute_I_psi(w2, psi2, a)
    comaximal = ideal1.power(n1).is_comaximal(ideal2.power(n2))
    if not comaximal:
        raise HypothesisViolationError(
            f"I_psi1^{n1} + I_psi2^{n2} has codimension {ideal1.power(n1).sum(ideal2.power(n2)).codim}; "
            "the theorem does not apply"
        )

    product = module_tensor(w1, w2)
    target = local_weyl(total)
    characters = {
        "W1": w1.character().to_entries(),
        "W2": w2.character().to_entries(),
        "tensor": product.character().to_entries(),
        "W": target.character().to_entries(),
    }

    branch = "single"
    iso = is_isomorphic_up_to_parity(product, target, seed=seed)
    if iso.kind == "not_iso":
        branch = "double"
        iso = is_isomorphic_up_to_parity(product, direct_sum(target, target), seed=seed)
        if iso.kind == "not_iso":
            iso = is_isomorphic_up_to_parity(product, direct_sum(target, parity_shift(target)), seed=seed)
    if iso.kind == "not_iso":
        raise VerificationError(f"W({lam1}) (x) W({lam2}) matches neither W({total.lam}) nor two copies of it")

    hat_matches = None
    if branch == "double":
        hat = hat_tensor(w1, w2)
        hat_matches = is_isomorphic_up_to_parity(hat, target, seed=seed).kind != "not_iso"
    logger.info("tensor theorem for %s, %s: %s branch", lam1, lam2, branch)
    return TensorTheoremReport(
        branch=branch,
        comaximal=comaximal,
        n_psi=(n1, n2),
        characters=characters,
        isomorphism=iso.report(),
        hat_tensor_matches=hat_matches,
    )
