from fractions import Fraction

import pytest

from qweyl.core.errors import ScalarDivisionError, SqrtNotRepresentableError
from qweyl.services.scalars import I, ONE, ZERO, FieldSpec, Scalar, field_extend, field_of, scalar_arith, sqrt


def test_square_roots_multiply():
    r2, r3 = Scalar.sqrt_int(2), Scalar.sqrt_int(3)
    assert r2 * r2 == 2
    assert r2 * r3 == Scalar.sqrt_int(6)
    assert Scalar.sqrt_int(8) == 2 * r2


def test_gaussian_division():
    one_plus_i = 1 + I
    one_minus_i = 1 - I
    assert one_plus_i / one_minus_i == I
    assert I * I == -1


def test_division_by_zero():
    with pytest.raises(ScalarDivisionError):
        ONE / ZERO
    # also a builtin ZeroDivisionError
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_inverse_rationalizes_radicals():
    x = 1 + Scalar.sqrt_int(2)
    assert x.inverse() == Scalar.sqrt_int(2) - 1
    y = Scalar.sqrt_int(2) + Scalar.sqrt_int(3)
    assert y * y.inverse() == ONE


def test_sqrt():
    assert sqrt(-1) == I
    assert sqrt(4) == 2
    assert sqrt(Fraction(1, 2)) == Scalar.sqrt_int(2) / 2
    assert sqrt(Scalar.gaussian(0, 2)) == 1 + I
    assert sqrt(Scalar.gaussian(3, 4)) == 2 + I
    s = sqrt(-6)
    assert s * s == -6


def test_sqrt_not_representable():
    with pytest.raises(SqrtNotRepresentableError):
        sqrt(1 + I)
    with pytest.raises(SqrtNotRepresentableError):
        sqrt(Scalar.sqrt_int(2))


def test_parse():
    assert Scalar.parse("1/2+3*i") == Scalar.gaussian(Fraction(1, 2), 3)
    assert Scalar.parse("sqrt(8)") == 2 * Scalar.sqrt_int(2)
    assert Scalar.parse("(1+i)*sqrt(6)") == (1 + I) * Scalar.sqrt_int(6)
    assert Scalar.parse(7) == 7
    with pytest.raises(ValueError):
        Scalar.parse("x + 1")
    with pytest.raises(ValueError):
        Scalar.parse(0.5)


def test_str_parses_back():
    value = 1 + Scalar.gaussian(Fraction(1, 2), -3) * Scalar.sqrt_int(6)
    assert Scalar.parse(str(value)) == value
    assert str(ZERO) == "0"


def test_field_extension_tracks_primes():
    spec = field_extend(FieldSpec(), 6)
    assert spec.primes == frozenset({2, 3})
    assert spec.contains_sqrt(24)
    assert field_extend(spec, 3) is spec
    assert field_of([Scalar.sqrt_int(5), Scalar.sqrt_int(10)]).primes == frozenset({2, 5})
    with pytest.raises(ValueError):
        FieldSpec(radicands=(4,))


def test_scalar_arith():
    assert scalar_arith(1, 2, "add") == 3
    assert scalar_arith(Scalar.sqrt_int(2), Scalar.sqrt_int(2), "mul") == 2
    assert scalar_arith(1, 4, "div") == Fraction(1, 4)
    with pytest.raises(ValueError):
        scalar_arith(1, 2, "pow")


def test_rational_scalars_hash_like_numbers():
    assert hash(Scalar.of(3)) == hash(3)
    assert hash(Scalar.of(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert hash(ZERO) == hash(0)
    keyed = {Scalar.of(2): "two", Scalar.of(Fraction(1, 3)): "third"}
    assert keyed[2] == "two"
    assert keyed[Fraction(1, 3)] == "third"
    assert 2 in {Scalar.sqrt_int(2) * Scalar.sqrt_int(2)}
    assert {1, ONE, Scalar.of(1)} == {1}
