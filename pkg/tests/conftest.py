import pytest

from hedgehog.apolarity import ApolarCubic
from hedgehog.obstruction import ObstructionCalculus
from hedgehog.parse import parse_cubic
from hedgehog.resolution import betti_slice, build_adjusted_presentation
from hedgehog.tangent import (perp_presentation, quotient_for_ideal,
                              quotient_for_perp)

F_EXAMPLE_TEXT = "x1*x2*x4 - x1*x5^2 + x2*x3^2 + x3*x5*x6 + x4*x6^2"


@pytest.fixture(scope="session")
def F_example():
    return parse_cubic(F_EXAMPLE_TEXT)


@pytest.fixture(scope="session")
def apolar(F_example):
    return ApolarCubic(F_example)


@pytest.fixture(scope="session")
def betti(apolar):
    return betti_slice(apolar)


@pytest.fixture(scope="session")
def pres(apolar, betti):
    return build_adjusted_presentation(apolar, betti)


@pytest.fixture(scope="session")
def quot(apolar, pres):
    return quotient_for_ideal(apolar, pres)


@pytest.fixture(scope="session")
def ppres(apolar, betti):
    return perp_presentation(apolar, betti)


@pytest.fixture(scope="session")
def pquot(apolar):
    return quotient_for_perp(apolar)


@pytest.fixture(scope="session")
def calc(apolar, pres, quot):
    return ObstructionCalculus(apolar, pres, quot)


from hypothesis import settings as _hyp_settings

_hyp_settings.register_profile("repo", derandomize=True, deadline=None)
_hyp_settings.load_profile("repo")
