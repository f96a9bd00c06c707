"""
Acceptance suites run by ``qweyl verify``.

Each suite is a plain function returning a SuiteResult.  Library errors raised
inside a check are recorded as failed checks so one broken construction does
not hide the rest of the suite.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qweyl.core.config import settings
from qweyl.core.errors import HypothesisViolationError, QWeylError
from qweyl.models import SUITES, CheckResult, SuiteResult
from qweyl.services.clifford import (
    MapWeight,
    QuadraticPair,
    build_H,
    clifford_algebra,
    irreducible_module,
    left_ideal_dimension,
)
from qweyl.services.coeff import direct_sum as algebra_sum
from qweyl.services.coeff import truncated_poly
from qweyl.services.liesuper import (
    WeightVector,
    build_q,
    check_presentation,
    current_algebra,
    odd_label,
    triangular_decomposition,
)
from qweyl.services.pbw import EnvelopingAlgebra, ef_power_identity, garland_report
from qweyl.services.tensor import is_isomorphic_up_to_parity, module_tensor, verify_tensor_theorem
from qweyl.services.weylmod import (
    WeightModule,
    bar_L,
    current_context,
    evaluation_module,
    field_algebra,
    ideal_report,
    irreducible_quotient,
    local_weyl,
    top_annihilation_check,
    truncate_to_cone,
)

logger = logging.getLogger(__name__)

Check = Callable[[], Tuple[bool, str]]

PROP4A_WEIGHTS = ((1, 0), (2, 0), (2, 1))


def _run_checks(suite: str, checks: Sequence[Tuple[str, Check]]) -> SuiteResult:
    results = []
    for name, check in checks:
        try:
            passed, detail = check()
        except QWeylError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        logger.info("[%s] %s: %s", suite, name, "ok" if passed else f"FAILED {detail}")
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return SuiteResult(suite=suite, checks=results)


# ======================================================================
# presentation
# ======================================================================
def presentation_suite(n_values: Sequence[int] = (2, 3, 4), seed: int = 0) -> SuiteResult:
    checks: List[Tuple[str, Check]] = []
    for n in n_values:
        q, rd = build_q(n)

        def axioms(q=q):
            bad = q.check_grading() + q.check_skew() + q.check_jacobi()
            return not bad, f"{len(bad)} failing basis tuples" if bad else ""

        def presentation(q=q, rd=rd):
            report = check_presentation(q, rd)
            failures = report.failures()
            return report.passed, "; ".join(f"{r.relation} {r.indices}" for r in failures[:5])

        def roots(rd=rd):
            failures = rd.verify()
            return not failures, "; ".join(failures[:5])

        def triangular(q=q, rd=rd):
            parts = triangular_decomposition(q, rd)
            return len(parts.positive) == n * (n - 1), ""

        checks += [
            (f"q({n}) super Jacobi and skew symmetry", axioms),
            (f"q({n}) presentation relations", presentation),
            (f"q({n}) root datum", roots),
            (f"q({n}) triangular decomposition", triangular),
        ]
        if n >= 3:
            # 2 alpha_1 is not a root of q(2), so the partner property starts at n = 3
            def partners(rd=rd):
                missing = rd.roots_without_odd_partner()
                return not missing, ", ".join(str(a) for a in missing)

            checks.append((f"q({n}) odd partner roots", partners))
    return _run_checks("presentation", checks)


# ======================================================================
# garland
# ======================================================================
def garland_suite(n_values: Sequence[int] = (2,), seed: int = 0) -> SuiteResult:
    ctx = current_context(2, field_algebra())
    u = ctx.envelope
    checks: List[Tuple[str, Check]] = []

    for k in range(1, 6):

        def ef_power(k=k):
            lhs, rhs = ef_power_identity(u, 1, k)
            return u.straighten_element(lhs) == u.straighten_element(rhs), ""

        checks.append((f"e_1 f_1^{k} commutation", ef_power))

    def confluence():
        rng = random.Random(seed)
        generators = list(range(ctx.algebra.dim))
        for _ in range(100):
            word = tuple(rng.choice(generators) for _ in range(rng.randint(2, 5)))
            if u.straighten(word, "leftmost") != u.straighten(word, "rightmost"):
                return False, f"strategies disagree on {word}"
        return True, ""

    checks.append(("straightening confluence on 100 random words", confluence))

    quartic = truncated_poly(4)
    q, rd = build_q(2)
    big = EnvelopingAlgebra(current_algebra(q, quartic))
    t = quartic.element("t")
    for r in (1, 2, 3):

        def garland(r=r):
            report = garland_report(big, rd, rd.simple_roots[0], t, r)
            return report.divided_power_holds, f"{report.residual_terms} residual terms"

        checks.append((f"Garland membership r={r} over {quartic.name}", garland))
    return _run_checks("garland", checks)


# ======================================================================
# clifford
# ======================================================================
def clifford_suite(n_values: Sequence[int] = (2,), seed: int = 0) -> SuiteResult:
    checks: List[Tuple[str, Check]] = []
    for r in range(5):

        def irreducible(r=r):
            pair = QuadraticPair.standard(r)
            c = clifford_algebra(pair)
            module = irreducible_module(c)
            expected = 2 ** ((r + 1) // 2)
            dims = sum(module.dim)
            ok = (
                dims == expected
                and left_ideal_dimension(c) == expected
                and module.check_relations(pair.form)
                and module.even_commutant_dim() == 1
            )
            return ok, f"dims {module.dim}, expected total {expected}"

        checks.append((f"irreducible Clifford module on {r} generators", irreducible))

    def kernel_acts_trivially():
        a = field_algebra()
        ctx = current_context(2, a)
        psi = MapWeight.from_lambda((1, 0), a)
        h = build_H(psi, ctx.q, ctx.rd, a)
        k2 = ctx.q.index(odd_label(2, 2))
        ok = h.kernel_acts_trivially and h.odd_actions[(k2, 0)].is_zero() and h.dim == (1, 1)
        return ok, f"H dims {h.dim}"

    checks.append(("k_2' acts as zero on H for lambda=(1,0)", kernel_acts_trivially))
    return _run_checks("clifford", checks)


# ======================================================================
# prop4a
# ======================================================================
def match_up_to_parity(built: WeightModule, reference: WeightModule) -> Tuple[bool, str]:
    c, d = built.character(), reference.character()
    if c == d:
        return True, ""
    if c == d.swap():
        return True, "matches after a parity shift"
    return False, f"dims {built.dim} against {reference.dim}"


def cone_truncation_problem(m: WeightModule) -> Optional[str]:
    """(M^nu)^nu = M^nu and wt(M^nu) lies in nu - Q+, for nu = top and top - alpha_1."""
    n = m.rank
    for nu in (m.highest, m.highest - (WeightVector.epsilon(n, 1) - WeightVector.epsilon(n, 2))):
        cut = truncate_to_cone(m, nu)
        if truncate_to_cone(cut, nu).character() != cut.character():
            return f"truncation at {nu} is not idempotent"
        if any(w.cone_depth(nu) is None for w in cut.weights):
            return f"weight outside {nu} - Q+"
    return None


def prop4a_suite(n_values: Sequence[int] = (2,), seed: int = 0) -> SuiteResult:
    checks: List[Tuple[str, Check]] = []
    for lam in PROP4A_WEIGHTS:

        def annihilation(lam=lam):
            irr = irreducible_quotient(bar_L(lam))
            result = top_annihilation_check(irr)
            return all(result.values()), f"per simple root {result}"

        def field_consistency(lam=lam):
            fresh = truncated_poly(1)
            w = local_weyl(MapWeight.from_lambda(lam, fresh))
            return match_up_to_parity(w, bar_L(lam))

        checks += [
            (f"f_i powers kill the top of L({lam})", annihilation),
            (f"local Weyl over C matches bar_L({lam})", field_consistency),
        ]

    def defining_module():
        irr = irreducible_quotient(bar_L((1, 0)))
        oracle = evaluation_module(current_context(2, field_algebra()).algebra, 0)
        result = is_isomorphic_up_to_parity(irr, oracle, seed=seed)
        return result.kind != "not_iso" and irr.total_dim == 4, f"{result.kind}, dims {irr.dim}"

    def truncated_local_weyl():
        a = truncated_poly(2)
        psi = MapWeight.from_lambda((1, 0), a)
        w = local_weyl(psi)
        support = set(w.character().counts)
        allowed = {WeightVector.of((1, 0)), WeightVector.of((0, 1))}
        report = ideal_report(w, psi, a)
        ok = (
            w.certificate is not None
            and w.certificate.certified
            and support <= allowed
            and w.character().is_weyl_invariant()
            and report.annihilates_top
        )
        return ok, f"dims {w.dim}, I_psi codim {report.codim}, n_psi {report.n_psi}"

    def cone_truncation():
        split = algebra_sum(truncated_poly(1), truncated_poly(1))
        w1 = local_weyl(MapWeight.from_lambda((1, 0), split, 0))
        w2 = local_weyl(MapWeight.from_lambda((1, 0), split, 1))
        modules = {
            "L((1,0))": bar_L((1, 0)),
            "L((2,0))": irreducible_quotient(bar_L((2, 0))),
            "W((1,0)) over C[t]/(t^2)": local_weyl(MapWeight.from_lambda((1, 0), truncated_poly(2))),
            "W((2,0)) over C": bar_L((2, 0)),
            "W((2,1)) over C": bar_L((2, 1)),
            "W1": w1,
            "W2": w2,
            "W1 (x) W2": module_tensor(w1, w2),
            "W": local_weyl(
                MapWeight.from_lambda((1, 0), split, 0) + MapWeight.from_lambda((1, 0), split, 1)
            ),
        }
        for label, m in modules.items():
            problem = cone_truncation_problem(m)
            if problem:
                return False, f"{label}: {problem}"
        return True, f"{len(modules)} modules"

    checks += [
        ("L((1,0)) is the defining module up to parity", defining_module),
        ("local Weyl module over C[t]/(t^2) for (1,0)", truncated_local_weyl),
        ("cone truncation", cone_truncation),
    ]
    return _run_checks("prop4a", checks)


# ======================================================================
# tensor
# ======================================================================
def tensor_suite(n_values: Sequence[int] = (2,), seed: int = 0) -> SuiteResult:
    checks: List[Tuple[str, Check]] = []
    split = algebra_sum(truncated_poly(1), truncated_poly(1))

    def two_points():
        psi1 = MapWeight.from_lambda((1, 0), split, 0)
        psi2 = MapWeight.from_lambda((1, 0), split, 1)
        report = verify_tensor_theorem(psi1, psi2, seed=seed)
        ok = report.comaximal and report.hat_tensor_matches is not False
        return ok, f"{report.branch} branch, {report.isomorphism.kind}"

    def unit_factor():
        psi1 = MapWeight.from_lambda((1, 0), split, 0)
        report = verify_tensor_theorem(psi1, MapWeight.zero(2, split), seed=seed)
        return report.branch == "single", f"{report.branch} branch"

    def negative_control():
        a = truncated_poly(2)
        psi = MapWeight.from_lambda((1, 0), a)
        try:
            verify_tensor_theorem(psi, psi, seed=seed)
        except HypothesisViolationError as exc:
            return True, str(exc)
        return False, "non-comaximal ideals were accepted"

    checks += [
        ("tensor theorem on C+C with disjoint points", two_points),
        ("tensor with the trivial module", unit_factor),
        ("non-comaximal ideals are rejected", negative_control),
    ]
    return _run_checks("tensor", checks)


SUITE_FUNCTIONS: Dict[str, Callable[..., SuiteResult]] = {
    "presentation": presentation_suite,
    "garland": garland_suite,
    "clifford": clifford_suite,
    "prop4a": prop4a_suite,
    "tensor": tensor_suite,
}


def _run_one(name: str, n_values: Optional[Sequence[int]], seed: int, depth_cap: int) -> SuiteResult:
    settings.depth_cap = depth_cap
    if n_values:
        return SUITE_FUNCTIONS[name](n_values=n_values, seed=seed)
    return SUITE_FUNCTIONS[name](seed=seed)


def run_suites(
    names: Sequence[str], jobs: int = 1, seed: int = 0, n_values: Optional[Sequence[int]] = None
) -> List[SuiteResult]:
    """Run suites (``all`` expands to every suite), results ordered by suite name."""
    selected = sorted(set(SUITES if "all" in names else names))
    unknown = [s for s in selected if s not in SUITE_FUNCTIONS]
    if unknown:
        raise ValueError(f"Unknown suites: {unknown}")
    # only the presentation suite is parameterized by rank
    ranks = {name: (n_values if name == "presentation" else None) for name in selected}
    if jobs <= 1 or len(selected) == 1:
        return [_run_one(name, ranks[name], seed, settings.depth_cap) for name in selected]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {name: pool.submit(_run_one, name, ranks[name], seed, settings.depth_cap) for name in selected}
        return [futures[name].result() for name in selected]
