import os

import pytest
from hypothesis import HealthCheck, settings

from quasiring.ring import parse_ring

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def z4():
    return parse_ring("Z/4")


@pytest.fixture
def m2f2():
    return parse_ring("M2(Z/2)")


@pytest.fixture
def rationals():
    return parse_ring("Q")


SMALL_FINITE = [
    "Z/2", "Z/4", "Z/6", "Z/8", "Z/9", "Z/12",
    "dZ/nZ(2,4)", "dZ/nZ(2,8)", "dZ/nZ(3,9)",
    "M2(Z/2)", "Z/2 + Z/3", "Unital(dZ/nZ(2,4))", "Unital(dZ/nZ(3,9))",
]
