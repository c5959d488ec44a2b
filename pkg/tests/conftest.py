import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from skewplanes import linalg
from skewplanes.exterior import TwoForm

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_ints = st.integers(min_value=-9, max_value=9)
two_forms = st.lists(small_ints, min_size=15, max_size=15).map(lambda c: TwoForm(tuple(c)))
vectors6 = st.lists(st.integers(-5, 5), min_size=6, max_size=6)


def invertible(n: int, rng: random.Random, bound: int = 3):
    while True:
        m = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if linalg.det(m):
            return m


@st.composite
def invertible_matrices(draw, n: int):
    seed = draw(st.integers(0, 10**6))
    return invertible(n, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(0)
