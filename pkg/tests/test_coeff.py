import pytest

from qweyl.core.errors import AlgebraMismatchError, InvalidAlgebraError
from qweyl.services.coeff import (
    IdealSubspace,
    direct_sum,
    from_table,
    ideal_generated,
    ideal_ops,
    largest_ideal_inside,
    make_algebra,
    truncated_poly,
    unit_ideal,
    zero_ideal,
)
from qweyl.services.linalg import Subspace
from qweyl.services.scalars import ONE


def test_truncated_polynomials():
    a = truncated_poly(3)
    assert a.labels == ("1", "t", "t^2")
    assert a.multiply(a.element("t"), a.element("t^2")) == {}
    assert a.power(a.element("t"), 2) == a.element("t^2")
    assert truncated_poly(1).name == "C"
    with pytest.raises(InvalidAlgebraError):
        truncated_poly(0)


def test_direct_sum_idempotents():
    a = direct_sum(truncated_poly(1), truncated_poly(1))
    assert a.multiply({0: ONE}, {1: ONE}) == {}
    assert a.unit == {0: ONE, 1: ONE}
    assert len(a.points) == 2
    assert a.evaluate(1, {1: ONE}) == 1


def test_table_validation():
    # t * t = 1 + t is commutative and associative, so it is accepted
    from_table("C[t]/(t^2-t-1)", ["1", "t"], [[{0: 1}, {1: 1}], [{1: 1}, {0: 1, 1: 1}]], {0: 1})
    with pytest.raises(InvalidAlgebraError):
        from_table("broken", ["1", "t"], [[{0: 1}, {1: 1}], [{0: 1}, {}]], {0: 1})
    with pytest.raises(InvalidAlgebraError):
        make_algebra("free", 2)


def test_ideal_powers():
    a = truncated_poly(3)
    t = ideal_generated(a, [a.element("t")])
    t2 = ideal_generated(a, [a.element("t^2")])
    assert t.power(2) == t2
    assert t2.codim == 2
    assert not ideal_ops(t, t2, "is_comaximal")
    assert ideal_ops(t, None, "power", 3).dim == 0
    assert ideal_ops(t, None, "codim") == 1


def test_comaximal_factors():
    a = direct_sum(truncated_poly(1), truncated_poly(1))
    left = ideal_generated(a, [{0: ONE}])
    right = ideal_generated(a, [{1: ONE}])
    assert left.is_comaximal(right)
    # comaximal ideals: product equals intersection
    assert left.product(right) == left.intersect(right)


def test_product_inside_intersection():
    a = truncated_poly(4)
    i = ideal_generated(a, [a.element("t")])
    j = ideal_generated(a, [a.element("t^2")])
    prod, meet = i.product(j), i.intersect(j)
    assert meet.space.contains_subspace(prod.space)
    codims = [i.power(k).codim for k in range(1, 6)]
    assert codims == sorted(codims) and codims[-1] == 4


def test_ideals_must_be_closed():
    a = truncated_poly(2)
    with pytest.raises(InvalidAlgebraError):
        IdealSubspace(a, Subspace.span([{0: ONE}], 2))


def test_mixing_algebras():
    with pytest.raises(AlgebraMismatchError):
        unit_ideal(truncated_poly(2)).sum(zero_ideal(truncated_poly(2)))


def test_largest_ideal_inside():
    a = truncated_poly(2)
    assert largest_ideal_inside(Subspace.full(2), a) == unit_ideal(a)
    assert largest_ideal_inside(Subspace.span([a.element("t")], 2), a).dim == 1
    assert largest_ideal_inside(Subspace.span([{0: ONE, 1: ONE}], 2), a) == zero_ideal(a)
