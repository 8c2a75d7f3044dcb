import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affine_growth.affine import AffineMap, Word, eval_word, gamma_generators
from affine_growth.config import Config
from affine_growth.errors import EqualFixedPoints, NotHomothety, NotTwoHomotheties, PlaceRingMismatch
from affine_growth.field import ModulusRing
from affine_growth.freeness import (
    RelationWitness,
    Verdict,
    check_json,
    check_pingpong,
    decide_pair,
    find_relation,
    ratio_reduce,
    refute_pair,
    search_freeness_certificate,
    translation_relation,
    verdict_to_json,
    verify_relation,
)
from affine_growth.growth import count_positive_words
from affine_growth.places import ArchimedeanPlace, PAdicPlace, TAdicPlace, isolate_roots

from conftest import CUBIC, GOLDEN, QT, RATIONAL2, SQRT2, monic_polys

LEHMER = ModulusRing.number_ring("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")
W = Word.parse


def brute_force_relation(f, g, max_len):
    """Independent oracle: evaluate every positive word directly and return
    the shortlex-smallest collision at the first colliding length."""
    first = {}
    for n in range(1, max_len + 1):
        pairs = []
        for letters in itertools.product((0, 1), repeat=n):
            w = Word.positive(letters)
            v = eval_word(w, [f, g])
            if v in first:
                pairs.append((first[v], w))
            else:
                first[v] = w
        if pairs:
            u, v = min(pairs, key=lambda p: ((len(p[0]), p[0].letters), (len(p[1]), p[1].letters)))
            return RelationWitness(u, v)
    return None


def test_pingpong_examples():
    a, b = gamma_generators(RATIONAL2)
    cert = check_pingpong(a, b, PAdicPlace(2, Fraction(1)))
    assert cert is not None and cert.fixed_points == (RATIONAL2(0), RATIONAL2(-1))
    f = AffineMap(QT.gen, QT.zero)
    g = f.conjugate(AffineMap(QT.one, QT.one))
    assert check_pingpong(f, g, TAdicPlace(Fraction(0))) is not None
    assert check_pingpong(a, a ** 2, PAdicPlace(2, Fraction(1))) is None
    with pytest.raises(NotHomothety):
        check_pingpong(a, b * a.inverse(), PAdicPlace(2, Fraction(1)))
    with pytest.raises(PlaceRingMismatch):
        check_pingpong(a, b, TAdicPlace(None))


def test_certificate_search():
    a, b = gamma_generators(RATIONAL2)
    assert isinstance(search_freeness_certificate(a, b).place, PAdicPlace)
    ga, gb = gamma_generators(GOLDEN)
    assert search_freeness_certificate(ga, gb) is None
    z = ga ** -3
    cert = search_freeness_certificate(z, z.conjugate(gb))
    assert isinstance(cert.place, ArchimedeanPlace) and cert.place.index == 0
    assert cert.margin > 0


def test_relation_examples():
    a, b = gamma_generators(CUBIC)
    assert find_relation(a, b, 6) == RelationWitness(W("aaaa"), W("bbab"))
    t1 = AffineMap(CUBIC.one, CUBIC.gen)
    t2 = AffineMap(CUBIC.one, CUBIC(3))
    assert find_relation(t1, t2, 4) == RelationWitness(W("ab"), W("ba"))
    assert find_relation(*gamma_generators(RATIONAL2), 12) is None


def test_find_relation_is_shortlex_minimal_at_first_length():
    a, b = gamma_generators(GOLDEN)
    assert find_relation(a, b, 6) == brute_force_relation(a, b, 6) == RelationWitness(W("aab"), W("bba"))


rationals = st.sampled_from([Fraction(c) for c in (2, -2, 3, Fraction(1, 2), Fraction(-1, 3), Fraction(2, 3), -1)])


@given(rationals, rationals, st.integers(-2, 2), st.integers(-2, 2))
def test_find_relation_agrees_with_brute_force(a1, a2, b1, b2):
    ring = RATIONAL2
    f, g = AffineMap(ring(a1), ring(b1)), AffineMap(ring(a2), ring(b2))
    found = find_relation(f, g, 5)
    assert found == brute_force_relation(f, g, 5)
    if found is not None:
        assert verify_relation(found, f, g)


def test_translation_relation_examples():
    wit = translation_relation((1, 1, 0, 1))
    assert (wit.u.render(), wit.v.render()) == ("b a b a a b", "a a a")
    a, b = AffineMap(CUBIC.gen, CUBIC.zero), AffineMap(CUBIC.one, CUBIC.one)
    assert eval_word(wit.u, [a, b]) == AffineMap(CUBIC.gen ** 3, CUBIC.zero)
    assert verify_relation(wit, a, b)
    wit = translation_relation((-1, 1))
    assert (wit.u.render(), wit.v.render()) == ("a b", "b a")
    wit = translation_relation((-2, 0, 1))
    assert (wit.u.render(), wit.v.render()) == ("a a b", "b b a a")
    assert verify_relation(wit, AffineMap(SQRT2.gen, SQRT2.zero), AffineMap(SQRT2.one, SQRT2.one))


@given(monic_polys(1, 4))
def test_translation_relation_property(pi):
    ring = ModulusRing.number_ring(pi)
    wit = translation_relation(pi)
    d = len(pi) - 1
    assert wit.u.count(0) == wit.v.count(0) == d
    a = AffineMap(ring.gen, ring.zero, _checked=False)
    b = AffineMap(ring.one, ring.one)
    lu, lv = eval_word(wit.u, [a, b]), eval_word(wit.v, [a, b])
    assert lu.a == lv.a
    assert lu.b - lv.b == ring.from_poly(pi)


def test_verify_relation_examples():
    wit = RelationWitness(W("aaaa"), W("bbab"))
    assert verify_relation(wit, *gamma_generators(CUBIC))
    assert not verify_relation(wit, *gamma_generators(ModulusRing.number_ring("x^3+x+2")))
    assert not verify_relation(RelationWitness(W("ab"), W("ab")), *gamma_generators(CUBIC))


def test_ratio_reduce():
    a, b = gamma_generators(CUBIC)
    x = CUBIC.gen
    assert ratio_reduce(a, b) == (x, x)
    f, g = AffineMap(x ** 2, CUBIC(5)), AffineMap(x ** -1, CUBIC.one)
    assert ratio_reduce(f, g) == (x ** 2, x ** -1)
    with pytest.raises(EqualFixedPoints):
        ratio_reduce(a, a ** 2)
    with pytest.raises(NotTwoHomotheties):
        ratio_reduce(a, b * a.inverse())


def test_decide_examples():
    assert decide_pair(*gamma_generators(RATIONAL2)).tag is Verdict.FREE
    v = decide_pair(*gamma_generators(CUBIC))
    assert v.tag is Verdict.NOT_FREE and v.witness == RelationWitness(W("aaaa"), W("bbab"))
    v = decide_pair(*gamma_generators(LEHMER), Config(relation_max_len=8))
    assert v.tag is Verdict.UNKNOWN and v.report["relation_max_len"] == 8


def test_structured_refutations():
    x = GOLDEN.gen
    # mixed-sign ratios reduce to a translation
    f, g = AffineMap(x, GOLDEN.zero), AffineMap(x ** -1, GOLDEN.one)
    wit = refute_pair(f, g, Config(reduced_max_len=3, relation_max_len=3))
    assert wit is not None and verify_relation(wit, f, g)
    # homothety and translation
    h, t = AffineMap(x ** 2, GOLDEN(3)), AffineMap(GOLDEN.one, x)
    wit = refute_pair(h, t, Config(reduced_max_len=2, relation_max_len=2))
    assert wit is not None and verify_relation(wit, h, t)


def test_json_roundtrip_and_tamper_detection():
    v = decide_pair(*gamma_generators(CUBIC))
    obj = json.loads(json.dumps(verdict_to_json(v)))
    assert check_json(obj)[0]
    obj["witness"]["v"] = "b b b a"
    assert not check_json(obj)[0]
    z = gamma_generators(GOLDEN)[0] ** -3
    v = decide_pair(z, z.conjugate(gamma_generators(GOLDEN)[1]))
    obj = json.loads(json.dumps(verdict_to_json(v)))
    assert check_json(obj)[0]
    obj["pair"][0]["a"] = ["0", "1"]
    assert not check_json(obj)[0]


def test_free_pair_counts():
    a, b = gamma_generators(RATIONAL2)
    assert count_positive_words(a, b, 8) == [2 ** n for n in range(1, 9)]
