import pytest

from qweyl.core.config import settings
from qweyl.services.coeff import direct_sum, truncated_poly
from qweyl.services.liesuper import build_q
from qweyl.services.weylmod import bar_L, current_context, field_algebra


@pytest.fixture(autouse=True, scope="session")
def checked_solves():
    """Every linear solve is re-verified by substitution during the tests."""
    previous = settings.verify_solves
    settings.verify_solves = True
    yield
    settings.verify_solves = previous


@pytest.fixture(scope="session")
def q2():
    return build_q(2)


@pytest.fixture(scope="session")
def q3():
    return build_q(3)


@pytest.fixture(scope="session")
def field():
    return field_algebra()


@pytest.fixture(scope="session")
def dual_numbers():
    """C[t]/(t^2); one shared object so module constructions share a context."""
    return truncated_poly(2)


@pytest.fixture(scope="session")
def two_points():
    return direct_sum(truncated_poly(1), truncated_poly(1))


@pytest.fixture(scope="session")
def ctx2(field):
    return current_context(2, field)


@pytest.fixture(scope="session")
def defining_weyl():
    return bar_L((1, 0))
