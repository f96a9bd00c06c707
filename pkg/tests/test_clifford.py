import pytest

from qweyl.core.errors import DegenerateFormError, NonDominantWeightError
from qweyl.services.clifford import (
    MapWeight,
    QuadraticPair,
    build_H,
    clifford_algebra,
    diagonalize_form,
    irreducible_module,
    left_ideal_dimension,
)
from qweyl.services.liesuper import odd_label
from qweyl.services.linalg import Matrix
from qweyl.services.scalars import ONE, Scalar


def test_clifford_algebra_sizes():
    assert clifford_algebra(QuadraticPair.standard(0)).dim == 1
    assert clifford_algebra(QuadraticPair.standard(3)).dim == 8


def test_exterior_algebra_for_zero_form():
    c = clifford_algebra(QuadraticPair.standard(2, Matrix.zeros(2, 2)))
    t0 = c.generator(0)
    assert c.multiply(t0, t0) == {}


def test_relations_with_identity_form():
    c = clifford_algebra(QuadraticPair.standard(2))
    t0, t1 = c.generator(0), c.generator(1)
    assert c.multiply(t0, t0) == {c.index(()): ONE}
    t01 = c.multiply(t0, t1)
    assert c.multiply(t01, t01) == {c.index(()): -ONE}


@pytest.mark.parametrize("r", range(5))
def test_irreducible_module_dimensions(r):
    pair = QuadraticPair.standard(r)
    c = clifford_algebra(pair)
    module = irreducible_module(c)
    expected = 2 ** ((r + 1) // 2)
    assert sum(module.dim) == expected
    assert left_ideal_dimension(c) == expected
    assert module.check_relations(pair.form)
    assert module.even_commutant_dim() == 1


def test_single_generator_swaps_parity():
    module = irreducible_module(clifford_algebra(QuadraticPair.standard(1)))
    assert module.dim == (1, 1)


def test_nonstandard_form_needs_radicals():
    form = Matrix.from_rows([[2, 1], [1, 3]])
    pair = QuadraticPair.standard(2, form)
    module = irreducible_module(clifford_algebra(pair))
    assert module.check_relations(form)


def test_degenerate_form_is_rejected():
    with pytest.raises(DegenerateFormError):
        irreducible_module(clifford_algebra(QuadraticPair.standard(2, Matrix.diagonal([1, 0]))))


def test_diagonalization_exposes_radical():
    diag = diagonalize_form(Matrix.from_rows([[1, 1], [1, 1]]))
    assert diag.rank == 1
    assert diag.radical().dim == 1
    assert diag.p @ Matrix.from_rows([[1, 1], [1, 1]]) @ diag.p.transpose() == Matrix.diagonal(diag.diagonal)


def test_highest_weight_space_for_defining_weight(ctx2, field):
    psi = MapWeight.from_lambda((1, 0), field)
    h = build_H(psi, ctx2.q, ctx2.rd, field)
    assert h.dim == (1, 1)
    assert h.rank == 1
    assert h.kernel_acts_trivially
    k2 = ctx2.q.index(odd_label(2, 2))
    assert h.odd_actions[(k2, 0)].is_zero()
    assert h.even_commutant_dim() == 1


def test_highest_weight_space_rank_two(ctx2, field):
    psi = MapWeight.from_lambda((2, 1), field)
    h = build_H(psi, ctx2.q, ctx2.rd, field)
    assert h.rank == 2
    assert sum(h.dim) == 2


def test_map_weights(field, two_points):
    psi = MapWeight.from_lambda((1, 0), two_points, 1)
    assert psi.lam.coords == (1, 0)
    assert psi.value(0, {0: ONE}) == 0
    total = psi + MapWeight.from_lambda((1, 0), two_points, 0)
    assert total.lam.coords == (2, 0)
    with pytest.raises(NonDominantWeightError):
        MapWeight.of(field, [[Scalar.of(1) / 2], [0]])
