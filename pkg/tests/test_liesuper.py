import pytest

from qweyl.core.errors import InvalidRankError, NotARootError, UnknownGeneratorError
from qweyl.services.coeff import truncated_poly
from qweyl.services.liesuper import (
    WeightVector,
    build_q,
    check_presentation,
    current_algebra,
    even_label,
    odd_label,
    sl2_triple,
    triangular_decomposition,
)


def test_dimensions(q2):
    q, _ = q2
    assert q.dim == 8
    assert q.space.dim == (4, 4)
    assert q.labels[:4] == ("e_1_1", "e_1_2", "e_2_1", "e_2_2")


def test_rank_must_be_at_least_two():
    with pytest.raises(InvalidRankError):
        build_q(1)


def test_basic_brackets(q2):
    q, _ = q2
    e, f = q.basis_vector(even_label(1, 2)), q.basis_vector(even_label(2, 1))
    assert q.bracket(e, f) == q.vector({"e_1_1": 1, "e_2_2": -1})
    k1 = q.basis_vector(odd_label(1, 1))
    assert q.bracket(k1, k1) == q.vector({"e_1_1": 2})
    f_odd = q.basis_vector(odd_label(2, 1))
    assert q.bracket(e, f_odd) == q.vector({"e'_1_1": 1, "e'_2_2": -1})
    assert q.bracket(k1, e) == q.basis_vector(odd_label(1, 2))


def test_unknown_label(q2):
    q, _ = q2
    with pytest.raises(UnknownGeneratorError):
        q.index("e_3_3")


@pytest.mark.parametrize("n", [2, 3])
def test_superalgebra_axioms(n):
    q, _ = build_q(n)
    assert q.check_grading() == []
    assert q.check_skew() == []
    assert q.check_jacobi() == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_presentation_relations_hold(n):
    q, rd = build_q(n)
    report = check_presentation(q, rd)
    assert report.passed, [r.model_dump() for r in report.failures()]


def test_presentation_reports_diagonal_case_separately(q3):
    report = check_presentation(*q3)
    cases = {r.case for r in report.results if r.relation == "[e_i',e_j']=0"}
    assert cases == {"i=j"}


def test_root_datum(q3):
    _, rd = q3
    assert len(rd.positive_roots) == 3
    assert len(rd.simple_roots) == 2
    assert rd.verify() == []
    assert rd.roots_without_odd_partner() == []


def test_q2_simple_root_has_no_odd_partner(q2):
    _, rd = q2
    assert rd.verify() == []
    assert rd.roots_without_odd_partner() == [rd.simple_roots[0]]


def test_triangular_decomposition(q2):
    q, rd = q2
    parts = triangular_decomposition(q, rd)
    assert parts.positive == ("e_1_2", "e'_1_2")
    assert parts.negative == ("e_2_1", "e'_2_1")
    assert len(parts.cartan) == 4


def test_sl2_triples(q2, q3):
    _, rd2 = q2
    triple = sl2_triple(rd2, rd2.simple_roots[0])
    assert (triple.x, triple.y) == ("e_1_2", "e_2_1")
    _, rd3 = q3
    alpha = WeightVector.of((1, 0, -1))
    triple = sl2_triple(rd3, alpha)
    assert (triple.x, triple.y) == ("e_1_3", "e_3_1")
    assert triple.h == {"e_1_1": 1, "e_3_3": -1}
    with pytest.raises(NotARootError):
        sl2_triple(rd3, -alpha)


def test_current_algebra_brackets(q2):
    q, _ = q2
    dual = truncated_poly(2)
    g = current_algebra(q, dual)
    assert g.space.dim == (8, 8)
    t = dual.element("t")
    assert g.bracket(g.embed("e_1_2", t), g.embed("e_2_1", t)) == {}

    cubic = truncated_poly(3)
    h = current_algebra(q, cubic)
    t2 = cubic.element("t^2")
    expected = h.tensor(q.vector({"e_1_1": 1, "e_2_2": -1}), t2)
    assert h.bracket(h.embed("e_1_2", cubic.element("t")), h.embed("e_2_1", cubic.element("t"))) == expected


def test_pbw_order_groups_roles(q2):
    q, _ = q2
    g = current_algebra(q, truncated_poly(2))
    roles = [g.role(x) for x in g.pbw_order]
    assert roles == sorted(roles, key=["negative", "cartan", "positive"].index)
    assert len(g.generators_by_role["positive"]) == 4


def test_weight_vectors():
    assert WeightVector.of((1, 0)).in_lambda_plus()
    assert WeightVector.of((0, 0)).in_lambda_plus()
    assert not WeightVector.of((1, 1)).in_lambda_plus()
    assert WeightVector.of((1, 1)).is_dominant()
    assert WeightVector.of((2, 1)).h_value(1) == 1
    assert WeightVector.of((0, 1)).cone_depth(WeightVector.of((1, 0))) == 1
    assert WeightVector.of((1, 0)).cone_depth(WeightVector.of((0, 1))) is None
    assert WeightVector.of((0, 2)).dominance_below(WeightVector.of((2, 0)))
    assert not WeightVector.of((3, -1)).dominance_below(WeightVector.of((2, 0)))
