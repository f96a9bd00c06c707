import pytest

from qweyl.core.errors import DimensionMismatchError, ScalarDivisionError
from qweyl.services.linalg import (
    EchelonBasis,
    Matrix,
    Subspace,
    inverse,
    is_invertible,
    kernel,
    rank,
    rref,
    solve,
    subspace_ops,
    unit_vector,
)
from qweyl.services.scalars import ONE, Scalar


def test_rref_identity_and_zero():
    reduced, pivots = rref(Matrix.identity(3))
    assert reduced == Matrix.identity(3)
    assert pivots == [0, 1, 2]
    reduced, pivots = rref(Matrix.zeros(2, 3))
    assert reduced.is_zero() and pivots == []


def test_rref_with_radicals():
    r2 = Scalar.sqrt_int(2)
    m = Matrix.from_rows([[1, r2], [r2, 2]])
    reduced, pivots = rref(m)
    assert pivots == [0]
    assert reduced == Matrix.from_rows([[1, r2], [0, 0]])
    assert rref(reduced)[0] == reduced
    (v,) = kernel(m)
    assert m.apply(v) == {}


def test_solve():
    a = Matrix.from_rows([[2, 1], [1, 3]])
    b = {0: Scalar.of(3), 1: Scalar.of(5)}
    x = solve(a, b)
    assert a.apply(x) == b
    assert solve(Matrix.from_rows([[1, 1], [1, 1]]), {0: ONE, 1: Scalar.of(2)}) is None


def test_inverse():
    m = Matrix.from_rows([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert inverse(m) @ m == Matrix.identity(3)
    assert is_invertible(m)
    with pytest.raises(ScalarDivisionError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kron_and_transpose():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    b = Matrix.identity(2)
    k = a.kron(b)
    assert k.shape == (4, 4)
    assert k[2, 0] == 3 and k[3, 1] == 3
    assert a.transpose()[0, 1] == 3


def test_subspace_sum_and_intersection():
    e1, e2 = Subspace.span([unit_vector(0)], 2), Subspace.span([unit_vector(1)], 2)
    assert e1.intersect(e2).dim == 0
    assert e1.sum(e2) == Subspace.full(2)

    a = Subspace.span([{0: ONE, 1: ONE}, {2: ONE}], 4)
    b = Subspace.span([{1: ONE}, {0: ONE, 2: Scalar.of(-1)}, {3: ONE}], 4)
    assert a.intersect(b).dim + a.sum(b).dim == a.dim + b.dim
    assert subspace_ops(a, a.sum(b), "contains") is False
    assert subspace_ops(a.sum(b), a, "contains") is True
    with pytest.raises(DimensionMismatchError):
        a.sum(Subspace.zero(3))


def test_quotient_basis_and_coordinates():
    s = Subspace.span([{0: ONE, 2: Scalar.of(5)}], 3)
    assert s.quotient_basis() == [1, 2]
    v = {0: Scalar.of(2), 2: Scalar.of(10)}
    assert s.contains(v)
    assert s.coordinates(v) == {0: Scalar.of(2)}


def test_echelon_basis():
    basis = EchelonBasis(3)
    assert basis.add({0: Scalar.of(2), 1: ONE}) == {0: ONE, 1: Scalar.of(1) / 2}
    assert basis.add({0: Scalar.of(4), 1: Scalar.of(2)}) is None
    assert basis.add({1: ONE}) is not None
    assert len(basis) == 2
    assert basis.to_subspace() == Subspace.span([{0: ONE}, {1: ONE}], 3)
