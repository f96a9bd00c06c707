import pytest

from qweyl.core.config import settings
from qweyl.services.clifford import MapWeight
from qweyl.services.suites import (
    clifford_suite,
    cone_truncation_problem,
    garland_suite,
    match_up_to_parity,
    presentation_suite,
    prop4a_suite,
    run_suites,
)
from qweyl.services.weylmod import bar_L, local_weyl, parity_shift


def test_clifford_suite_passes():
    result = clifford_suite()
    assert result.passed, [c for c in result.checks if not c.passed]
    assert len(result.checks) == 6


def test_presentation_suite_skips_partner_check_for_q2():
    names = [c.name for c in presentation_suite(n_values=(2,)).checks]
    assert not any("partner" in name for name in names)


def test_results_are_sorted_and_depth_cap_is_applied():
    previous = settings.depth_cap
    results = run_suites(["presentation", "clifford"], n_values=[2])
    assert [r.suite for r in results] == ["clifford", "presentation"]
    assert settings.depth_cap == previous


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(["homology"])


def test_field_comparison_accepts_a_parity_shift(defining_weyl):
    trivial = bar_L((0, 0))
    assert match_up_to_parity(trivial, trivial) == (True, "")
    ok, detail = match_up_to_parity(parity_shift(trivial), trivial)
    assert ok and "parity" in detail
    ok, _ = match_up_to_parity(bar_L((2, 0)), defining_weyl)
    assert not ok


def test_cone_truncation_on_local_weyl_modules(defining_weyl, dual_numbers):
    assert cone_truncation_problem(defining_weyl) is None
    assert cone_truncation_problem(local_weyl(MapWeight.from_lambda((1, 0), dual_numbers))) is None


@pytest.mark.slow
def test_garland_suite_passes():
    result = garland_suite()
    assert result.passed, [c for c in result.checks if not c.passed]
    assert len(result.checks) == 9


@pytest.mark.slow
def test_prop4a_suite_passes():
    result = prop4a_suite()
    assert result.passed, [c for c in result.checks if not c.passed]
    assert len(result.checks) == 9
    cone = next(c for c in result.checks if c.name == "cone truncation")
    assert cone.detail == "9 modules"


@pytest.mark.slow
def test_tensor_suite_passes():
    (result,) = run_suites(["tensor"])
    assert result.passed, [c for c in result.checks if not c.passed]
