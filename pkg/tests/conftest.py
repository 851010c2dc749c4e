import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from grodiag.pipeline import FilteredComplex, Simplex
from grodiag.verification import example_m1, example_m2

settings.register_profile("grodiag", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("grodiag")


@pytest.fixture
def m1():
    return example_m1()


@pytest.fixture
def m2():
    return example_m2()


@pytest.fixture
def triangle():
    """Boundary of a triangle: vertices at 0, edges ab and bc at 1, edge ca at 2."""
    cells = [((0,), 0), ((1,), 0), ((2,), 0), ((0, 1), 1), ((1, 2), 1), ((0, 2), 2)]
    return FilteredComplex(Simplex(i, v, x) for i, (v, x) in enumerate(cells))


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
