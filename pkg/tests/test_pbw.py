import pytest
import sympy

from qweyl.core.errors import UnknownGeneratorError
from qweyl.services.coeff import truncated_poly
from qweyl.services.liesuper import current_algebra
from qweyl.services.pbw import (
    EnvelopingAlgebra,
    ef_power_identity,
    garland_check,
    garland_report,
    p_series_coefficients,
    pbw_straighten,
)
from qweyl.services.scalars import ONE


@pytest.fixture(scope="module")
def envelope_q2(q2):
    q, _ = q2
    return EnvelopingAlgebra(current_algebra(q, truncated_poly(1)))


@pytest.fixture(scope="module")
def envelope_poly4(q2):
    q, _ = q2
    return EnvelopingAlgebra(current_algebra(q, truncated_poly(4)))


def test_odd_square_straightens_to_half_bracket(envelope_q2):
    u = envelope_q2
    k1 = u.word(["e'_1_1*1"])
    assert u.straighten(k1 + k1) == {u.word(["e_1_1*1"]): ONE}


def test_commutator_straightening(envelope_q2):
    u = envelope_q2
    # e f = f e + h with f before e in the PBW order
    normal = u.straighten(u.word(["e_1_2*1", "e_2_1*1"]))
    assert normal == {
        u.word(["e_2_1*1", "e_1_2*1"]): ONE,
        u.word(["e_1_1*1"]): ONE,
        u.word(["e_2_2*1"]): -ONE,
    }
    assert all(u.is_normal(w) for w in normal)


def test_straighten_rejects_unknown_letters(envelope_q2):
    with pytest.raises(UnknownGeneratorError):
        envelope_q2.straighten((999,))
    with pytest.raises(ValueError):
        envelope_q2.straighten((), strategy="middle")


@pytest.mark.parametrize("k", range(1, 6))
def test_ef_power_identity(envelope_q2, k):
    lhs, rhs = ef_power_identity(envelope_q2, 1, k)
    assert envelope_q2.straighten_element(lhs) == envelope_q2.straighten_element(rhs)


@pytest.mark.parametrize(
    "labels",
    [
        ["e'_1_2*1", "e'_2_1*1", "e_1_2*1", "e_2_1*1"],
        ["e_1_2*1", "e'_1_1*1", "e'_2_1*1", "e'_2_2*1", "e_2_1*1"],
        ["e'_1_2*1", "e'_1_2*1", "e'_2_1*1"],
    ],
)
def test_leftmost_and_rightmost_agree(envelope_q2, labels):
    u = envelope_q2
    w = u.word(labels)
    assert u.straighten(w, "leftmost") == u.straighten(w, "rightmost")


def test_pbw_monomials_group_exponents(envelope_q2):
    u = envelope_q2
    normal = pbw_straighten(u, ["e_2_1*1", "e_2_1*1"])
    (monomial,) = normal
    assert monomial.word == (("e_2_1*1", 2),)
    assert monomial.weight.coords == (-2, 2)
    assert str(monomial) == "(e_2_1*1)^2"


def test_p_series_low_order():
    h1, h2 = sympy.symbols("H1:3")
    coefficients = [p.as_expr() for p in p_series_coefficients(2)]
    assert coefficients[0] == 1
    assert coefficients[1] == -h1
    assert sympy.simplify(coefficients[2] - (h1 ** 2 / 2 - h2 / 2)) == 0


@pytest.mark.parametrize("r", [1, 2])
def test_garland_identity_with_divided_powers(envelope_poly4, q2, r):
    _, rd = q2
    t = envelope_poly4.algebra.coeff.element("t")
    report = garland_report(envelope_poly4, rd, rd.simple_roots[0], t, r)
    assert report.divided_power_holds
    assert report.residual_terms == 0
    assert garland_check(envelope_poly4, rd, rd.simple_roots[0], t, r)


def test_garland_needs_positive_r(envelope_poly4, q2):
    _, rd = q2
    with pytest.raises(ValueError):
        garland_report(envelope_poly4, rd, rd.simple_roots[0], envelope_poly4.algebra.coeff.unit, 0)
