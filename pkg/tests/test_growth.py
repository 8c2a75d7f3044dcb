import math
from fractions import Fraction

import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from affine_growth.affine import AffineMap, gamma_generators
from affine_growth.config import Config
from affine_growth.field import ModulusRing
from affine_growth.growth import (
    GeneratingSet,
    annotate_dplus,
    ball_sizes,
    count_positive_words,
    dplus_lower,
    dplus_upper,
    entropy_bounds,
    grow_ball,
)

from conftest import CUBIC, GOLDEN, RATIONAL2

# frozen from a Fraction-pair enumerator independent of the ring code
GAMMA2_BALLS = [1, 5, 17, 47, 115, 265, 583, 1253, 2635, 5481, 11271]


def gamma(ring):
    return GeneratingSet(gamma_generators(ring), ("A", "B"))


def naive_cubic_ball2():
    """All 25 products of two elements of Sigma, as sympy matrices mod pi."""
    x = sp.symbols("x")
    pi = sp.Poly(x**3 + x + 1, x)

    def red(e):
        return sp.Poly(e, x).rem(pi).as_expr()

    xinv = red(-x**2 - 1)
    sigma = [(1, 0), (x, 0), (x, 1), (xinv, 0), (xinv, red(-xinv))]
    seen = set()
    for a1, b1 in sigma:
        for a2, b2 in sigma:
            a, b = red(a1 * a2), red(a1 * b2 + b1)
            seen.add((sp.expand(a), sp.expand(b)))
    return len(seen)


def test_symmetrization():
    sigma = gamma(RATIONAL2)
    assert len(sigma) == 5 and sigma.elements[0].is_identity
    assert all(g.inverse() in sigma.elements for g in sigma.elements)
    a, b = gamma_generators(RATIONAL2)
    rev = GeneratingSet((b, a))
    assert rev.elements == sigma.elements
    raw = GeneratingSet((a, b), symmetric=False)
    assert len(raw) == 3


def test_ball_size_examples():
    assert [r.count for r in ball_sizes(gamma(RATIONAL2), 10).rows] == GAMMA2_BALLS
    cyclic = GeneratingSet((AffineMap(RATIONAL2(2), RATIONAL2(0)),))
    assert [r.count for r in ball_sizes(cyclic, 6).rows] == [2 * n + 1 for n in range(7)]
    assert ball_sizes(gamma(CUBIC), 2).count(2) == naive_cubic_ball2()


def test_table_invariants():
    table = ball_sizes(gamma(CUBIC), 8)
    assert table.is_monotone() and table.is_submultiplicative()
    assert all(table.doubling_ok(n) for n in range(1, 5))


def test_memory_budget_truncates_with_flag():
    table = ball_sizes(gamma(RATIONAL2), 10, memory_budget=100)
    assert table.truncated and table.n_max < 10


def test_entropy_bounds():
    table = ball_sizes(gamma(RATIONAL2), 10)
    bounds = entropy_bounds(table, 1)
    assert bounds.lower == math.log(2)
    assert bounds.consistent()
    assert all(bounds.lower <= up + 1e-12 for _, up in bounds.upper_values())
    zeta3 = ModulusRing.number_ring("x^2+x+1")
    assert dplus_upper(gamma(zeta3), 4) is None
    assert entropy_bounds(ball_sizes(gamma(zeta3), 6), None).lower == 0


def test_dplus_upper_examples():
    up = dplus_upper(gamma(RATIONAL2), 3)
    assert up.n == 1 and up.words == ("A", "B")
    up = dplus_upper(gamma(GOLDEN), 4)
    assert up.n == 3
    assert up.pair[0].a == up.pair[1].a == GOLDEN.gen ** -3


def test_dplus_lower_examples():
    ct2 = ModulusRing.number_ring("x^6+x^2+1")
    low = dplus_lower(gamma(ct2), 1)
    assert low.m == 1 and low.implied_lower == 2
    assert all(r.reason in ("commute", "relation", "ratio_table") for r in low.log)
    cyclic = GeneratingSet((AffineMap(GOLDEN.gen, GOLDEN.one),))
    assert dplus_lower(cyclic, 3).m == 3
    low = dplus_lower(gamma(RATIONAL2), 2, Config(relation_max_len=6, reduced_max_len=4))
    assert low.m == 0 and low.unresolved


def test_lower_and_upper_never_contradict():
    for ring in (GOLDEN, RATIONAL2, CUBIC):
        sigma = gamma(ring)
        cfg = Config(relation_max_len=8, reduced_max_len=6)
        up = dplus_upper(sigma, 3, cfg)
        low = dplus_lower(sigma, 2, cfg)
        if up is not None:
            assert low.m + 1 <= up.n
        table = ball_sizes(sigma, 3)
        annotate_dplus(table, low, up)
        assert set(table.dplus_status.values()) <= {"cert_found", "all_refuted", "mixed", "unexplored"}


def test_rescaled_generating_set_keeps_certified_pair():
    sigma = gamma(GOLDEN)
    up = dplus_upper(sigma, 3)
    for k in (2, 3):
        ball_k = grow_ball(sigma, k)
        powered = GeneratingSet(tuple(g for g in ball_k.radius if not g.is_identity))
        big = grow_ball(powered, math.ceil(up.n / k))
        assert up.pair[0] in big.radius and up.pair[1] in big.radius


def test_count_positive_words():
    a, b = gamma_generators(RATIONAL2)
    assert count_positive_words(a, b, 10) == [2 ** n for n in range(1, 11)]
    a, b = gamma_generators(CUBIC)
    assert count_positive_words(a, b, 4)[3] < 16
    assert count_positive_words(a, a, 5) == [1] * 5


@given(st.lists(st.sampled_from([Fraction(2), Fraction(1, 3), Fraction(-3), Fraction(5, 2)]),
                min_size=1, max_size=2),
       st.lists(st.integers(-2, 2), min_size=2, max_size=2))
def test_ball_sizes_submultiplicative_random(ratios, shifts):
    gens = tuple(AffineMap(RATIONAL2(r), RATIONAL2(s)) for r, s in zip(ratios, shifts))
    table = ball_sizes(GeneratingSet(gens), 4)
    assert table.is_monotone() and table.is_submultiplicative()


def test_csv_format():
    table = ball_sizes(gamma(CUBIC), 8)
    lines = table.to_csv().strip().splitlines()
    assert lines[0] == "n,ball_size,upper_bound_bits,dplus_status"
    assert len(lines) == 10
