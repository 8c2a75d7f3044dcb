from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from affine_growth.affine import AffineMap
from affine_growth.field import ModulusRing

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

CUBIC = ModulusRing.number_ring("x^3+x+1")
GOLDEN = ModulusRing.number_ring("x^2-x-1")
SQRT2 = ModulusRing.number_ring("x^2-2")
RATIONAL2 = ModulusRing.number_ring("x-2")
QT = ModulusRing.function_field()

small_int = st.integers(-4, 4)
small_frac = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def monic_polys(min_degree=1, max_degree=4, bound=3):
    return st.integers(min_degree, max_degree).flatmap(
        lambda d: st.lists(st.integers(-bound, bound), min_size=d, max_size=d)
        .map(lambda cs: tuple(cs) + (1,)))


def elements(ring, coeff=small_frac):
    if ring.is_number_ring:
        return st.lists(coeff, min_size=ring.degree, max_size=ring.degree).map(ring.from_poly)
    polys = st.lists(coeff, min_size=1, max_size=3)
    dens = st.lists(small_int, min_size=1, max_size=3).filter(lambda p: any(p))
    return st.builds(ring.from_fraction, polys, dens)


def units(ring):
    """Nonzero elements that are invertible in the ring."""
    def ok(a):
        try:
            a.inv()
            return True
        except ZeroDivisionError:
            return False
    return elements(ring).filter(ok)


def affine_maps(ring):
    return st.builds(AffineMap, units(ring), elements(ring))


@pytest.fixture
def cubic():
    return CUBIC


@pytest.fixture
def golden():
    return GOLDEN
