import pytest

from qweyl.core.errors import DimensionMismatchError
from qweyl.services.linalg import Matrix
from qweyl.services.superspace import (
    EVEN,
    ODD,
    GradedMap,
    SuperSpace,
    direct_sum_space,
    intertwiners,
    koszul_sign,
    parity_shift,
    tensor_space,
)


def test_parity_shift():
    v = SuperSpace.of_dims(1, 0)
    assert parity_shift(v).dim == (0, 1)
    w = SuperSpace.of_dims(2, 3)
    assert parity_shift(parity_shift(w)) == w


def test_tensor_dims_and_signs():
    v = SuperSpace.of_dims(1, 1)
    t = tensor_space(v, v)
    assert t.space.dim == (2, 2)
    assert koszul_sign(ODD, ODD) == -1
    assert koszul_sign(EVEN, ODD) == 1
    a, b = SuperSpace.of_dims(2, 1), SuperSpace.of_dims(1, 3)
    assert tensor_space(a, b).space.dim == (2 * 1 + 1 * 3, 2 * 3 + 1 * 1)


def test_direct_sum_space():
    assert direct_sum_space(SuperSpace.of_dims(1, 2), SuperSpace.of_dims(3, 0)).dim == (4, 2)


def test_labels_must_be_distinct():
    with pytest.raises(ValueError):
        SuperSpace(("a", "a"), (EVEN, ODD))


def test_graded_map_degree_is_checked():
    v = SuperSpace.of_dims(1, 1)
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    GradedMap(v, v, swap, ODD)
    with pytest.raises(ValueError):
        GradedMap(v, v, swap, EVEN)
    with pytest.raises(DimensionMismatchError):
        GradedMap(v, SuperSpace.of_dims(1, 0), swap, ODD)


def test_intertwiners_of_an_odd_operator():
    # one odd operator swapping the two basis vectors
    v = SuperSpace.of_dims(1, 1)
    t = Matrix.from_rows([[0, 1], [1, 0]])
    even = intertwiners(v, v, [t], [t], [ODD], degree=EVEN)
    odd = intertwiners(v, v, [t], [t], [ODD], degree=ODD)
    assert len(even) == 1 and len(odd) == 1
    (phi,) = odd
    # phi t = -t phi
    assert phi @ t == -(t @ phi)
