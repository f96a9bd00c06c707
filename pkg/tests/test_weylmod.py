import pytest

from qweyl.core.errors import DimensionMismatchError, NonDominantWeightError
from qweyl.services.clifford import MapWeight, build_H
from qweyl.services.coeff import ideal_generated
from qweyl.services.liesuper import WeightVector
from qweyl.services.scalars import ONE
from qweyl.services.weylmod import (
    Character,
    bar_L,
    check_global_relations,
    check_irreducible,
    check_module_axioms,
    compute_I_psi,
    current_context,
    direct_sum,
    evaluation_module,
    height_annihilation_check,
    ideal_report,
    irreducible_quotient,
    local_weyl,
    parity_shift,
    quotient,
    restrict_to_submodule,
    root_ideals,
    spanning_bound_check,
    submodule_generated,
    top_annihilation_check,
    truncate_to_cone,
    verma_truncated,
)
from qweyl.services.weylmod import _f_power_seeds, _induced_module

W10 = WeightVector.of((1, 0))
W01 = WeightVector.of((0, 1))


@pytest.fixture(scope="module")
def dual_weyl(dual_numbers):
    psi = MapWeight.from_lambda((1, 0), dual_numbers)
    return psi, local_weyl(psi)


def test_trivial_weight_gives_trivial_module():
    m = bar_L((0, 0))
    assert m.dim == (1, 0)
    assert m.character() == Character.of({WeightVector.of((0, 0)): (1, 0)})


def test_defining_weight_character(defining_weyl):
    assert defining_weyl.dim == (2, 2)
    assert defining_weyl.character() == Character.of({W10: (1, 1), W01: (1, 1)})
    assert defining_weyl.certificate.certified


def test_defining_module_is_irreducible(defining_weyl, ctx2):
    assert check_irreducible(defining_weyl)
    simple = irreducible_quotient(defining_weyl)
    assert simple.character() == evaluation_module(ctx2.algebra, 0).character()


def test_evaluation_module_satisfies_axioms(ctx2):
    assert check_module_axioms(evaluation_module(ctx2.algebra, 0)) == []


def test_truncated_verma_axioms_on_interior(field):
    psi = MapWeight.from_lambda((1, 0), field)
    verma = verma_truncated(psi, 3)
    assert verma.depth_window == 3
    assert check_module_axioms(verma) == []


@pytest.mark.parametrize("lam", [(0, 1), (1, 1), (1, 2)])
def test_weights_outside_lambda_plus_are_rejected(lam):
    with pytest.raises(NonDominantWeightError):
        bar_L(lam)


def test_global_relations_hold(defining_weyl, field):
    report = check_global_relations(defining_weyl, W10, field)
    assert report.passed
    assert top_annihilation_check(defining_weyl) == {1: True}


def test_local_weyl_over_dual_numbers(dual_weyl):
    _, w = dual_weyl
    assert w.certificate.certified
    assert w.certificate.depth == 2
    assert w.certificate.band == (1, 2)
    assert w.certificate.attempts == 1
    assert w.dim == (2, 2)
    character = w.character()
    assert character == Character.of({W10: (1, 1), W01: (1, 1)})
    assert character.is_weyl_invariant()
    assert character.within_dominance_hull(W10)


@pytest.mark.parametrize(
    "lam, coeff",
    [((1, 0), "dual_numbers"), ((2, 0), "field"), ((2, 1), "field")],
)
def test_character_is_stable_past_certified_depth(lam, coeff, request):
    a = request.getfixturevalue(coeff)
    psi = MapWeight.from_lambda(lam, a)
    w = local_weyl(psi)
    ctx = current_context(2, a)
    h = build_H(psi, ctx.q, ctx.rd, a)
    deeper = _induced_module(ctx, psi, h, w.certificate.depth + 1)
    rebuilt = quotient(deeper, submodule_generated(deeper, _f_power_seeds(ctx, deeper, psi.lam)))
    assert rebuilt.character() == w.character()


def test_root_ideals_over_dual_numbers(dual_weyl, dual_numbers):
    _, w = dual_weyl
    rd = current_context(2, dual_numbers).rd
    t_ideal = ideal_generated(dual_numbers, [dual_numbers.element("t")])
    assert root_ideals(w, rd) == {alpha: t_ideal for alpha in rd.positive_roots}


def test_coefficient_ideal(dual_weyl, dual_numbers):
    psi, w = dual_weyl
    ideal, n_psi = compute_I_psi(w, psi, dual_numbers)
    assert ideal == ideal_generated(dual_numbers, [dual_numbers.element("t")])
    assert n_psi >= 1
    report = ideal_report(w, psi, dual_numbers)
    assert report.codim == 1
    assert report.annihilates_top
    assert report.root_meet_codim == 1
    assert report.root_meet_kills_odd_cartan

    rd = current_context(2, dual_numbers).rd
    assert all(height_annihilation_check(w, rd, ideal.power(n_psi)).values())


def test_spanning_bound_inclusive_reading(dual_weyl, dual_numbers):
    _, w = dual_weyl
    rd = current_context(2, dual_numbers).rd
    report = spanning_bound_check(w, rd, rd.simple_roots[0], dual_numbers.element("t"))
    assert report.bound == 1
    assert report.inclusive_holds


def test_ideal_of_module_over_other_algebra(defining_weyl, dual_numbers):
    psi = MapWeight.from_lambda((1, 0), dual_numbers)
    with pytest.raises(DimensionMismatchError):
        compute_I_psi(defining_weyl, psi, dual_numbers)


def test_cone_truncation(defining_weyl):
    assert truncate_to_cone(defining_weyl, W10) is defining_weyl
    assert truncate_to_cone(defining_weyl, W01).total_dim == 0
    once = truncate_to_cone(defining_weyl, W10)
    assert truncate_to_cone(once, W10).character() == once.character()


def test_submodules_and_quotients(defining_weyl):
    doubled = direct_sum(defining_weyl, defining_weyl)
    second_top = [{defining_weyl.total_dim + i: ONE} for i in defining_weyl.top]
    sub = submodule_generated(doubled, second_top)
    assert sub.dim == 4
    assert restrict_to_submodule(doubled, sub).character() == defining_weyl.character()
    assert quotient(doubled, sub).character() == defining_weyl.character()


def test_parity_shift_swaps_character(defining_weyl):
    shifted = parity_shift(defining_weyl)
    assert shifted.character() == defining_weyl.character().swap()
    assert check_module_axioms(shifted) == []
