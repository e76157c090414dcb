import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from carlitzosc import carlitz
from carlitzosc.algebra import GF, Poly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def F2():
    return GF(2)


@pytest.fixture(scope="session")
def F3():
    return GF(3)


@pytest.fixture(scope="session")
def F4():
    return GF(2, 2)


@pytest.fixture(params=[(2, 1), (3, 1), (2, 2)], ids=["q2", "q3", "q4"], scope="session")
def field(request):
    return GF(*request.param)


@pytest.fixture
def corrupt_D2(monkeypatch):
    """Every factorial table built while active has D_2 multiplied by (1 + x)."""
    real = carlitz.factorials

    def broken(F, imax):
        c = real(F, imax)
        D = list(c.D)
        if len(D) > 2:
            D[2] = D[2] * (Poly.one(F) + Poly.x(F))
        return carlitz.CarlitzCache(F, c.imax, c.brackets, tuple(D), c.L)

    monkeypatch.setattr(carlitz, "factorials", broken)
    yield
