"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import pytest

from affine_growth.affine import AffineMap, GroupClass, classify_group, gamma_generators
from affine_growth.config import Config
from affine_growth.field import ModulusRing
from affine_growth.freeness import (
    Verdict,
    check_json,
    check_pingpong,
    decide_pair,
    refute_pair,
    search_freeness_certificate,
    verdict_to_json,
    verify_relation,
    FreenessVerdict,
)
from affine_growth.growth import (
    GeneratingSet,
    ball_sizes,
    count_positive_words,
    dplus_lower,
    dplus_upper,
    entropy_bounds,
)
from affine_growth.mahler import ct_family_verify, is_kronecker, lehmer_experiment, mahler_measure
from affine_growth.places import ArchimedeanPlace, abs_arch, contraction_exponent, isolate_roots

LEHMER = (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)


@contextmanager
def criterion(capsys, number, title, seconds):
    start = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed > seconds:
            detail = f" (over the {seconds:g}s budget)"
            raise AssertionError(f"criterion {number} took {elapsed:.1f}s > {seconds}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\nCRITERION {number} {status}: {title} [{elapsed:.2f}s]{detail}")


def gamma(text):
    ring = ModulusRing.number_ring(text)
    return ring, GeneratingSet(gamma_generators(ring), ("A", "B"))


def test_criterion_1_cubic_identity(capsys):
    with criterion(capsys, 1, "A^4 = B^2 A B over x^3+x+1, fails over x^3+x+2", 1):
        a, b = gamma_generators(ModulusRing.number_ring("x^3+x+1"))
        assert a ** 4 == b ** 2 * a * b
        a2, b2 = gamma_generators(ModulusRing.number_ring("x^3+x+2"))
        assert a2 ** 4 != b2 ** 2 * a2 * b2


@pytest.mark.parametrize("n,seconds", [(1, 10), (2, 10), (3, 600)])
def test_criterion_2_counterexample_family(capsys, n, seconds):
    with criterion(capsys, 2, f"power relations and refutation radius {n - 1} for n = {n}", seconds):
        report = ct_family_verify(n)
        assert len(report.verified_relations) == (2 * n) ** 2
        assert report.all_verified
        ring = report.ring
        sigma = GeneratingSet(gamma_generators(ring), ("A", "B"))
        low = dplus_lower(sigma, n - 1)
        assert low.m == n - 1 and not low.unresolved
        assert report.dplus_lower_claim >= n


def test_criterion_3_free_semigroup_count(capsys):
    with criterion(capsys, 3, "2^n distinct positive words of A(2), B(2) for n <= 12", 30):
        a, b = gamma_generators(ModulusRing.number_ring("x-2"))
        assert check_pingpong(a, b, search_freeness_certificate(a, b).place) is not None
        counts = count_positive_words(a, b, 12)
        assert counts == [2 ** n for n in range(1, 13)]
        assert sum(counts) <= 2 ** 13


def test_criterion_4_entropy_sandwich(capsys):
    with criterion(capsys, 4, "log 2 / d+ <= (1/n) log #S^n and doubling bounds for Gamma(2)", 60):
        _, sigma = gamma("x-2")
        table = ball_sizes(sigma, 10)
        up = dplus_upper(sigma, 1)
        assert up.n == 1
        bounds = entropy_bounds(table, up.n)
        assert bounds.lower_log2 == 1
        for n in range(1, 11):
            assert bounds.lower_below(n, table.count(n))
        for n in (2, 3, 4, 5):
            assert table.doubling_ok(n)


def test_criterion_5_unit_ratio_contraction(capsys):
    with criterion(capsys, 5, "contraction exponent 3 and radius-3 certificate for the golden ratio", 5):
        ring, sigma = gamma("x^2-x-1")
        x = ring.gen
        ce = contraction_exponent(x)
        assert (ce.n0, ce.sign) == (3, -1)
        place = isolate_roots(ring.modulus)[ce.place.index]
        e3 = abs_arch(x ** -3, place, 40)
        e2 = abs_arch(x ** -2, place, 40)
        assert e3.width <= Fraction(1, 10**9) and e2.width <= Fraction(1, 10**9)
        assert e3.hi <= Fraction(1, 3) < e2.lo
        assert abs(float(e3.lo) - 0.2360679775) < 1e-9 and abs(float(e2.lo) - 0.3819660113) < 1e-9
        a, b = gamma_generators(ring)
        z = a ** -3
        cert = check_pingpong(z, z.conjugate(b), place)
        assert cert is not None and isinstance(cert.place, ArchimedeanPlace)
        assert all(enc.width <= Fraction(1, 10**9) for enc in cert.ratio_bounds)
        up = dplus_upper(sigma, 3)
        assert up is not None and up.n == 3
        assert dplus_upper(sigma, 2) is None


def test_criterion_6_group_classes(capsys):
    with criterion(capsys, 6, "virtually nilpotent / polycyclic / not polycyclic triple", 1):
        assert classify_group(gamma("x^2+x+1")[1].raw) is GroupClass.VIRTUALLY_NILPOTENT
        assert classify_group(gamma("x^2-x-1")[1].raw) is GroupClass.POLYCYCLIC_NOT_VN
        assert classify_group(gamma("x-2")[1].raw) is GroupClass.NOT_POLYCYCLIC


def test_criterion_7_mahler_suite(capsys):
    with criterion(capsys, 7, "Kronecker cases, golden measure, product formula", 120):
        cyclotomic = [(-1, 1), (1, 1), (1, 1, 1), (1, 0, 1), (1, -1, 1), (1, 1, 1, 1, 1)]
        for p in cyclotomic:
            res = mahler_measure(p)
            assert is_kronecker(p) and res.measure.lo == res.measure.hi == 1
        golden = mahler_measure((-1, -1, 1), 64).measure
        assert golden.width <= Fraction(1, 10**9)
        with mpmath.workdps(100):
            phi = max(abs(r) for r in mpmath.polyroots([1, -1, -1], extraprec=400))
            assert mpmath.mpf(golden.lo.numerator) / golden.lo.denominator <= phi
            assert phi <= mpmath.mpf(golden.hi.numerator) / golden.hi.denominator
        rng = random.Random(20261017)
        checked = 0
        while checked < 20:
            d = rng.randint(1, 8)
            coeffs = tuple(rng.randint(-5, 5) for _ in range(d)) + (1,)
            if coeffs[0] == 0:
                continue
            res = mahler_measure(coeffs, 32)
            lo = hi = Fraction(1)
            for r in res.per_root:
                lo *= r.modulus.lo ** r.place.multiplicity
                hi *= r.modulus.hi ** r.place.multiplicity
            assert lo <= abs(coeffs[0]) <= hi
            checked += 1


def test_criterion_8_lehmer_guard(capsys):
    with criterion(capsys, 8, "Lehmer polynomial: implied d+ >= 5, no certificate at radius <= 2", 300):
        report = lehmer_experiment(LEHMER, 6, cert_radius=2)
        assert report["implied_dplus_lower"] == 5
        assert report["certificate_found"] is False and report["claim_consistent"]
        ring, sigma = gamma("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")
        assert dplus_upper(sigma, 2) is None
        assert decide_pair(*gamma_generators(ring)).tag is not Verdict.FREE


# -- soundness ---------------------------------------------------------------

RINGS = [ModulusRing.number_ring(t) for t in
         ("x-2", "x+3", "x-5", "x^2-2", "x^2-x-1", "x^3+x+1",
          "x^2+1", "x^2+x+1", "x^2-3x+1")] + [ModulusRing.function_field()]
SCHEDULES = [Config(relation_max_len=5, reduced_max_len=3, reduction_bound=4),
             Config(relation_max_len=8, reduced_max_len=5, reduction_bound=8)]


def random_element(rng, ring):
    if ring.is_number_ring:
        return ring.from_poly([Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2)))
                               for _ in range(ring.degree)])
    num = [rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]
    return ring.from_fraction(num, [rng.choice((1, -1)), rng.randint(0, 1)])


def random_unit(rng, ring):
    while True:
        a = random_element(rng, ring)
        try:
            a.inv()
            return a
        except ZeroDivisionError:
            continue


def random_pair(rng):
    ring = rng.choice(RINGS)
    if rng.random() < 0.4:
        a, b = gamma_generators(ring)
        gens = [a, b, a.inverse(), b.inverse()]
        words = []
        for _ in range(2):
            w = AffineMap.identity(ring)
            for _ in range(rng.randint(1, 3)):
                w = w * rng.choice(gens)
            words.append(w)
        return tuple(words)
    return (AffineMap(random_unit(rng, ring), random_element(rng, ring)),
            AffineMap(random_unit(rng, ring), random_element(rng, ring)))


def test_criterion_9_soundness(capsys):
    with criterion(capsys, 9, "soundness over 1000 random pairs and 100 conjugators", 600):
        rng = random.Random(9)
        tally = {"free": 0, "notfree": 0, "unknown": 0}
        decided = []
        certified = 0
        for _ in range(1000):
            f, g = random_pair(rng)
            cert = search_freeness_certificate(f, g)
            witnesses = [refute_pair(f, g, cfg) for cfg in SCHEDULES]
            if cert is not None:
                assert all(w is None for w in witnesses), (f, g)
                obj = json.loads(json.dumps(verdict_to_json(
                    FreenessVerdict(Verdict.FREE, (f, g), certificate=cert))))
                assert check_json(obj)[0]
                assert count_positive_words(f, g, 6) == [2 ** n for n in range(1, 7)]
                certified += 1
            for w in witnesses:
                if w is not None:
                    assert verify_relation(w, f, g)
                    obj = json.loads(json.dumps(verdict_to_json(
                        FreenessVerdict(Verdict.NOT_FREE, (f, g), witness=w))))
                    assert check_json(obj)[0]
            verdict = decide_pair(f, g, SCHEDULES[0])
            tally[verdict.tag.value] += 1
            if verdict.tag is not Verdict.UNKNOWN:
                decided.append(verdict)
        assert certified and tally["free"] and tally["notfree"]
        for verdict in decided[:100]:
            f, g = verdict.pair
            c = AffineMap(random_unit(rng, f.ring), random_element(rng, f.ring))
            cf, cg = f.conjugate(c), g.conjugate(c)
            again = decide_pair(cf, cg, SCHEDULES[0])
            assert again.tag is verdict.tag
            if verdict.witness is not None:
                assert verify_relation(verdict.witness, cf, cg)
        with capsys.disabled():
            print(f"\n  soundness tally {tally}, certificates {certified}, conjugation checks {min(100, len(decided))}")
        assert len(decided) >= 100
