from dataclasses import replace
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from affine_growth import poly as P
from affine_growth.errors import PlaceRingMismatch, PreconditionError, RequiresField
from affine_growth.field import ModulusRing
from affine_growth.places import (
    ArchimedeanPlace,
    PAdicPlace,
    TAdicPlace,
    abs_arch,
    contraction_exponent,
    find_contracting_place,
    isolate_roots,
    newton_polygon_valuations,
    norm_enclosure,
    place_from_json,
    polygon_valuations,
    tadic_order,
    verify_root_box,
    vp,
)

from conftest import CUBIC, GOLDEN, QT, SQRT2, elements, monic_polys

LEHMER = (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)


def oracle_roots(coeffs):
    with mpmath.workdps(100):
        return mpmath.polyroots([int(c) for c in reversed(coeffs)], maxsteps=800, extraprec=800)


def in_box(z, box):
    lo_r, hi_r, lo_i, hi_i = (mpmath.mpf(b.numerator) / b.denominator for b in box)
    return lo_r <= z.real <= hi_r and lo_i <= z.imag <= hi_i


@pytest.mark.parametrize("coeffs", [(-1, -1, 1), (1, 1, 0, 1), LEHMER, (-2, 0, 1), (1, 0, 0, 0, 1)])
def test_isolation_matches_high_precision_oracle(coeffs):
    places = isolate_roots(coeffs, 64)
    assert len(places) == len(coeffs) - 1
    with mpmath.workdps(100):
        for z in oracle_roots(coeffs):
            hits = [pl for pl in places if in_box(z, pl.box)]
            assert len(hits) == 1
    for pl in places:
        assert pl.width <= Fraction(1, 2**64)
        assert verify_root_box(pl)


@given(monic_polys(1, 5))
def test_isolation_counts_roots_with_multiplicity(coeffs):
    squared = P.mul(coeffs, (1, 1))  # an extra factor keeps some multiplicity around
    places = isolate_roots(squared, 32)
    assert sum(pl.multiplicity for pl in places) == len(squared) - 1
    for i, a in enumerate(places):
        for b in places[i + 1:]:
            disjoint = (a.box[1] < b.box[0] or b.box[1] < a.box[0]
                        or a.box[3] < b.box[2] or b.box[3] < a.box[2])
            assert disjoint


def test_place_order_and_conjugates():
    places = isolate_roots((1, 1, 0, 1), 64)
    assert [pl.real for pl in places] == [True, False, False]
    assert places[1].conjugate_index == 2 and places[2].conjugate_index == 1
    golden = isolate_roots((-1, -1, 1), 64)
    assert golden[0].approx().real > golden[1].approx().real


def test_tampered_box_is_rejected():
    pl = isolate_roots((-1, -1, 1), 64)[0]
    shifted = replace(pl, box=(pl.box[0] + 1, pl.box[1] + 1, pl.box[2], pl.box[3]))
    assert not verify_root_box(shifted)
    assert place_from_json(pl.to_json()) == pl


@given(elements(CUBIC))
def test_norm_enclosure_contains_exact_norm(a):
    norm = abs(a.charpoly()[0])
    assert norm_enclosure(a, 48).contains(norm)


def test_golden_absolute_values():
    pl = isolate_roots((-1, -1, 1), 64)[0]
    x = GOLDEN.gen
    enc3 = abs_arch(x ** -3, pl, 40)
    enc2 = abs_arch(x ** -2, pl, 40)
    assert enc3.width <= Fraction(1, 10**9)
    with mpmath.workdps(100):
        exact = ((1 + mpmath.sqrt(5)) / 2) ** -3
        assert mpmath.mpf(enc3.lo.numerator) / enc3.lo.denominator <= exact
        assert exact <= mpmath.mpf(enc3.hi.numerator) / enc3.hi.denominator
    assert enc3.hi <= Fraction(1, 3) < enc2.lo
    with pytest.raises(PlaceRingMismatch):
        abs_arch(CUBIC.gen, pl)


def test_contraction_exponent_golden():
    ce = contraction_exponent(GOLDEN.gen)
    assert (ce.n0, ce.place.index, ce.sign) == (3, 0, -1)
    with pytest.raises(PreconditionError):
        contraction_exponent(ModulusRing.number_ring("x^2+x+1").gen)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 5)), min_size=1, max_size=4))
def test_polygon_valuations_match_known_roots(roots):
    # polynomial with rational roots +-2^a/b: valuations are read off directly
    values = [Fraction(2) ** a * (1 if b % 2 else -1) / (b if b % 2 else 1) for a, b in roots]
    poly = (Fraction(1),)
    for r in values:
        poly = P.mul(poly, (-r, Fraction(1)))
    assert polygon_valuations(poly, 2) == sorted(vp(r, 2) for r in values)


def test_newton_polygon_on_fields():
    assert newton_polygon_valuations(SQRT2.gen, 2) == [Fraction(1, 2)] * 2
    ring = ModulusRing.number_ring("x^2-3x+2")
    with pytest.raises(RequiresField):
        newton_polygon_valuations(ring.gen, 2)


def test_find_contracting_place():
    assert find_contracting_place(ModulusRing.number_ring("x-2").gen) == PAdicPlace(2, Fraction(1))
    assert find_contracting_place(GOLDEN.gen) is None
    assert isinstance(find_contracting_place(GOLDEN.gen ** -3, "arch_third"), ArchimedeanPlace)
    assert find_contracting_place(QT.gen) == TAdicPlace(Fraction(0))


def test_tadic_orders():
    t = QT.gen
    f = QT.parse_element("(t-1)^2/(t^3+t)")
    assert tadic_order(f, Fraction(1)) == 2
    assert tadic_order(f, Fraction(0)) == -1
    assert tadic_order(f, None) == 1
    assert tadic_order(t, Fraction(0)) == 1
