import pytest

from qweyl.core.errors import AlgebraMismatchError, HypothesisViolationError
from qweyl.services.clifford import MapWeight
from qweyl.services.liesuper import WeightVector
from qweyl.services.tensor import (
    hat_split,
    hat_tensor,
    is_isomorphic_up_to_parity,
    module_tensor,
    odd_endomorphisms,
    verify_tensor_theorem,
)
from qweyl.services.weylmod import Character, bar_L, check_module_axioms, direct_sum, local_weyl, parity_shift


@pytest.fixture(scope="module")
def trivial():
    return bar_L((0, 0))


def test_character_convolution():
    w = WeightVector.of((1, 0))
    c = Character.of({w: (1, 1)})
    assert c.convolve(c) == Character.of({WeightVector.of((2, 0)): (2, 2)})


def test_tensor_with_trivial_module(trivial, defining_weyl):
    product = module_tensor(trivial, defining_weyl)
    assert product.character() == defining_weyl.character()
    assert is_isomorphic_up_to_parity(product, defining_weyl).kind == "iso"


def test_tensor_square_of_defining_module(defining_weyl):
    product = module_tensor(defining_weyl, defining_weyl)
    assert product.dim == (8, 8)
    assert check_module_axioms(product) == []


def test_odd_endomorphisms(trivial, defining_weyl):
    assert odd_endomorphisms(trivial) == []
    (phi,) = odd_endomorphisms(defining_weyl)
    assert phi.square_scalar is not None and phi.square_scalar


def test_parity_shift_is_detected(defining_weyl):
    result = is_isomorphic_up_to_parity(defining_weyl, parity_shift(defining_weyl))
    assert result.kind in ("iso", "iso_after_pi")
    assert result.report().witness_shape == (4, 4)
    assert is_isomorphic_up_to_parity(defining_weyl, direct_sum(defining_weyl, defining_weyl)).kind == "not_iso"


def test_hat_tensor_is_half(defining_weyl, trivial):
    hat = hat_tensor(defining_weyl, defining_weyl)
    assert hat.total_dim == 8
    assert check_module_axioms(hat) == []
    # no odd endomorphism on the trivial factor
    assert hat_tensor(trivial, defining_weyl).total_dim == 4


def test_hat_split_halves_match(defining_weyl):
    split = hat_split(defining_weyl, defining_weyl)
    assert split.plus.total_dim == split.minus.total_dim == 8
    assert split.holds


def test_modules_over_different_algebras(defining_weyl, dual_numbers):
    other = local_weyl(MapWeight.from_lambda((1, 0), dual_numbers))
    with pytest.raises(AlgebraMismatchError):
        module_tensor(defining_weyl, other)


@pytest.mark.slow
def test_two_points_double_branch(two_points):
    psi1 = MapWeight.from_lambda((1, 0), two_points, 0)
    psi2 = MapWeight.from_lambda((1, 0), two_points, 1)
    report = verify_tensor_theorem(psi1, psi2)
    assert report.comaximal
    assert report.branch == "double"
    assert report.isomorphism.kind != "not_iso"
    assert report.hat_tensor_matches
    dims = {name: sum(e.even + e.odd for e in entries) for name, entries in report.characters.items()}
    assert dims == {"W1": 4, "W2": 4, "tensor": 16, "W": 8}


def test_trivial_factor_single_branch(two_points):
    psi1 = MapWeight.from_lambda((1, 0), two_points, 0)
    report = verify_tensor_theorem(psi1, MapWeight.zero(2, two_points))
    assert report.branch == "single"
    assert report.hat_tensor_matches is None


def test_same_point_is_not_comaximal(dual_numbers):
    psi = MapWeight.from_lambda((1, 0), dual_numbers)
    with pytest.raises(HypothesisViolationError):
        verify_tensor_theorem(psi, psi)
