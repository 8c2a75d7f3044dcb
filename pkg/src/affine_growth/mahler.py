"""Mahler measures, the Kronecker test, and two experiments built on Γ(x).

``m(pi)`` is the product of ``max(1, |lambda|)`` over the complex roots of a
monic integer polynomial, counted with multiplicity.  It bounds the entropy
of the group generated by ``A = (x, 0)`` and ``B = (x, 1)`` from above, while
a free pair at radius n bounds it from below by ``log 2 / n``; together they
force the radius of positive independence to be at least
``log 2 / log m(pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from mpmath import iv, mpf

from . import poly as P
from .affine import AffineMap, Word, gamma_generators
from .config import DEFAULT, Config
from .errors import DegreeBudget, PreconditionError, ZeroConstantTerm
from .field import Irreducible, ModulusRing, root_of_unity_bound
from .freeness import RelationWitness, verify_relation
from .growth import (
    GeneratingSet,
    annotate_dplus,
    ball_sizes,
    dplus_bracket,
    dplus_lower,
    dplus_upper,
    entropy_bounds,
    growth_summary,
)
from .places import AbsEnclosure, ArchimedeanPlace, abs_poly_at, isolate_roots, refine_place

__all__ = [
    "MahlerResult", "mahler_measure", "is_kronecker", "gamma_generators",
    "CtRelation", "CtReport", "ct_family_verify", "ct_modulus",
    "log_enclosure", "lehmer_experiment",
]

ONE = AbsEnclosure(Fraction(1), Fraction(1))
X_POLY = (0, 1)


def _integer_monic(pi) -> tuple[int, ...]:
    coeffs = P.strip(pi)
    if not coeffs or any(Fraction(c).denominator != 1 for c in coeffs):
        raise PreconditionError("expected a nonzero integer polynomial")
    coeffs = tuple(int(c) for c in coeffs)
    if coeffs[-1] != 1:
        raise PreconditionError("expected a monic polynomial")
    return coeffs


def _strip_x(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    k = 0
    while coeffs[k] == 0:
        k += 1
    return coeffs[k:], k


# -- Kronecker --------------------------------------------------------------


def is_kronecker(pi) -> bool:
    """Exact test that every root is zero or a root of unity.

    Cyclotomic factors are divided out via ``gcd(g, X^k - 1)`` for
    ``k <= max(2 d^2, 36)``, which covers every cyclotomic polynomial of
    degree at most d.
    """
    g, _ = _strip_x(_integer_monic(pi))
    g = tuple(Fraction(c) for c in g)
    bound = root_of_unity_bound(len(g) - 1)
    for k in range(1, bound + 1):
        if P.degree(g) == 0:
            break
        xk = (Fraction(-1),) + (Fraction(0),) * (k - 1) + (Fraction(1),)
        while P.degree(g) > 0:
            h = P.gcd_poly(g, xk)
            if P.degree(h) == 0:
                break
            g = P.exact_div(g, h)
    return P.degree(g) == 0


# -- Mahler measure ---------------------------------------------------------


@dataclass(frozen=True)
class RootFactor:
    place: ArchimedeanPlace
    modulus: AbsEnclosure
    contribution: AbsEnclosure


@dataclass(frozen=True)
class MahlerResult:
    measure: AbsEnclosure
    per_root: tuple[RootFactor, ...]
    is_kronecker: bool
    x_power: int = 0
    root_product: Optional[AbsEnclosure] = None

    def to_json(self) -> dict:
        return {
            "measure": self.measure.to_json(),
            "is_kronecker": self.is_kronecker,
            "stripped_x_power": self.x_power,
            "roots": [{"index": r.place.index, "multiplicity": r.place.multiplicity,
                       "box": r.place.to_json()["box"],
                       "abs": r.modulus.to_json()} for r in self.per_root],
        }


def _clamp_one(enc: AbsEnclosure) -> AbsEnclosure:
    return AbsEnclosure(max(enc.lo, Fraction(1)), max(enc.hi, Fraction(1)), enc.exhausted)


def mahler_measure(pi, precision_bits: int = 64, strict: bool = False,
                   max_bits: int = 8192) -> MahlerResult:
    """Certified enclosure of ``m(pi)`` of width at most ``2^-precision_bits``.

    Roots at zero contribute 1 and are stripped first (recorded in
    ``x_power``); ``strict`` makes them an error instead.
    """
    coeffs, k = _strip_x(_integer_monic(pi))
    if k and strict:
        raise ZeroConstantTerm(f"polynomial is divisible by X^{k}")
    kron = is_kronecker(coeffs)
    if len(coeffs) == 1:
        return MahlerResult(ONE, (), True, k, ONE)
    target = Fraction(1, 1 << precision_bits)
    bits = precision_bits + 2 * len(coeffs).bit_length() + 8
    places = isolate_roots(coeffs, bits)
    while True:
        factors = []
        measure, product = ONE, ONE
        for pl in places:
            enc = abs_poly_at(X_POLY, pl, bits + 16)
            contrib = _clamp_one(enc)
            factors.append(RootFactor(pl, enc, contrib))
            for _ in range(pl.multiplicity):
                measure = measure * contrib
                product = product * enc
        if kron:
            measure = ONE
        if measure.width <= target or bits > max_bits:
            if measure.width > target:
                measure = AbsEnclosure(measure.lo, measure.hi, True)
            return MahlerResult(measure, tuple(factors), kron, k, product)
        bits *= 2
        places = [refine_place(pl, bits) for pl in places]


def _iv_of(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


def _mpf_exact(x) -> Fraction:
    x = mpf(x)
    return Fraction(int(x.man)) * Fraction(2) ** int(x.exp)


def log_enclosure(enc: AbsEnclosure) -> tuple[Fraction, Fraction]:
    """Outward-rounded rational bounds on ``log`` of an enclosure with lo > 0."""
    out = iv.log(iv.mpf([_iv_of(enc.lo).a, _iv_of(enc.hi).b]))
    lo, hi = out._mpi_
    return _mpf_exact(lo), _mpf_exact(hi)


# -- the counterexample family ---------------------------------------------


def ct_modulus(n: int) -> tuple[int, ...]:
    """``X^(3 n!) + X^(n!) + 1``."""
    N = math.factorial(n)
    coeffs = [0] * (3 * N + 1)
    coeffs[0] = coeffs[N] = coeffs[3 * N] = 1
    return tuple(coeffs)


@dataclass(frozen=True)
class CtRelation:
    p: int
    q: int
    identity: str
    holds: bool
    witness_holds: bool


@dataclass
class CtReport:
    n: int
    ring: ModulusRing
    verified_relations: list[CtRelation]
    dplus_lower_claim: int
    symmetrized_m: Optional[int] = None
    raw_m: Optional[int] = None
    unresolved: list = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(r.holds and r.witness_holds for r in self.verified_relations)

    def to_json(self) -> dict:
        return {
            "schema": "v1",
            "n": self.n,
            "ring": self.ring.to_json(),
            "relations": [{"p": r.p, "q": r.q, "identity": r.identity,
                           "holds": r.holds, "witness_holds": r.witness_holds}
                          for r in self.verified_relations],
            "all_verified": self.all_verified,
            "dplus_lower_claim": self.dplus_lower_claim,
            "symmetrized_refutation_radius": self.symmetrized_m,
            "raw_refutation_radius": self.raw_m,
            "unresolved": [list(u) for u in self.unresolved],
        }


def _ct_relation(ring: ModulusRing, N: int, p: int, q: int) -> CtRelation:
    x = ring.gen
    a_map = AffineMap(x ** q, ring.zero)
    b_map = AffineMap(x ** p, ring.one)
    lhs = a_map ** (4 * N // q)
    rhs = (b_map ** (2 * N // p)) * (a_map ** (N // q)) * (b_map ** (N // p))
    ident = (f"A(x^{q})^{4 * N // q} = B(x^{p})^{2 * N // p} "
             f"A(x^{q})^{N // q} B(x^{p})^{N // p}")
    # the same identity as a positive relation in the letters
    # a = A(x^q)^sign(q), b = B(x^p)^sign(p)
    sa, sb = (1 if q > 0 else -1), (1 if p > 0 else -1)
    ea, eb = N // abs(q), N // abs(p)
    u = Word.positive([0] * (4 * ea))
    v = Word.positive([1] * (2 * eb) + [0] * ea + [1] * eb)
    wit_ok = verify_relation(RelationWitness(u, v), a_map ** sa, b_map ** sb)
    return CtRelation(p, q, ident, lhs == rhs, wit_ok)


def ct_family_verify(n: int, config: Config = DEFAULT, modulus=None,
                     allow_large: bool = False, run_dplus: bool = True) -> CtReport:
    """Check the power relations over ``Q[X]/(X^(3 n!) + X^(n!) + 1)`` for all
    ``1 <= |p|, |q| <= n`` and refute every pair in the ball of radius n - 1.

    ``modulus`` overrides the ring, as a negative control.  Degrees beyond
    18 (n > 3) need ``allow_large``.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    N = math.factorial(n)
    if 3 * N > 18 and not allow_large:
        raise DegreeBudget(f"degree {3 * N} exceeds the default budget of 18")
    ring = ModulusRing.number_ring(ct_modulus(n) if modulus is None else modulus)
    ks = [k for k in range(-n, n + 1) if k]
    rels = [_ct_relation(ring, N, p, q) for p in ks for q in ks]
    report = CtReport(n, ring, rels, 1)
    if run_dplus:
        gens = gamma_generators(ring)
        sym = dplus_lower(GeneratingSet(gens, ("A", "B")), n - 1, config)
        raw = dplus_lower(GeneratingSet(gens, ("A", "B"), symmetric=False), n - 1, config)
        report.symmetrized_m = sym.m
        report.raw_m = raw.m
        report.unresolved = sym.unresolved + raw.unresolved
        report.dplus_lower_claim = sym.m + 1
    return report


# -- Lehmer gap experiment --------------------------------------------------


def _polynomial_trend(counts: list[int]) -> Optional[bool]:
    """Heuristic flag: the apparent growth degree ``log2(#S^{2n} / #S^n)``
    has levelled off (it increases linearly in n under exponential growth)."""
    degrees = [math.log2(counts[2 * n] / counts[n])
               for n in range(1, len(counts)) if 2 * n < len(counts)]
    if len(degrees) < 3:
        return None
    return degrees[-1] - degrees[-2] < 0.25


def lehmer_experiment(pi, n_max: int = 12, config: Config = DEFAULT,
                      cert_radius: int = 2, precision_bits: int = 64,
                      assume_irreducible: bool = True) -> dict:
    """Tabulate the finite-n inequalities linking ``m(pi)`` and Γ(x) growth.

    Reports the log Mahler measure, the growth table with entropy bracket,
    the implied lower bound ``ceil(log 2 / log m)`` on the radius of positive
    independence, doubling checks, and a guard that no certificate below the
    implied bound was found.
    """
    coeffs = _integer_monic(pi)
    if coeffs[0] not in (1, -1):
        raise PreconditionError("constant term must be +1 or -1")
    ring = ModulusRing.number_ring(coeffs)
    if ring.irreducible is Irreducible.NO or (
            ring.irreducible is Irreducible.UNKNOWN and not assume_irreducible):
        raise PreconditionError("polynomial must be irreducible")
    ring = ModulusRing.number_ring(coeffs, irreducible=True)
    mres = mahler_measure(coeffs, precision_bits)
    implied = None
    log_m = None
    if not mres.is_kronecker:
        log_m = log_enclosure(mres.measure)
        # log m <= log m_hi gives a sound (possibly smaller) integer bound
        ratio = iv.log(2) / iv.log(_iv_of(mres.measure.hi))
        implied = math.ceil(_mpf_exact(ratio._mpi_[0]))
    sigma = GeneratingSet(gamma_generators(ring), ("A", "B"))
    table = ball_sizes(sigma, n_max, config.memory_budget_elements)
    upper = dplus_upper(sigma, min(cert_radius, table.n_max), config, ball=table.ball)
    annotate_dplus(table, None, upper)
    summary = growth_summary(table, None, upper)
    counts = [r.count for r in table.rows]
    doubling = {n: table.doubling_ok(n) for n in range(1, table.n_max // 2 + 1)}
    bounds = entropy_bounds(table, upper.n if upper else None)
    consistent = upper is None or implied is None or upper.n >= implied
    return {
        "schema": "v1",
        "polynomial": P.format_poly(coeffs),
        "mahler": mres.to_json(),
        "log_mahler": None if log_m is None else
        {"lo": str(log_m[0]), "hi": str(log_m[1]),
         "decimal": f"{float((log_m[0] + log_m[1]) / 2):.12f}"},
        "implied_dplus_lower": implied,
        "certificate_radius_searched": min(cert_radius, table.n_max),
        "certificate_found": upper is not None,
        "claim_consistent": consistent and bounds.consistent(),
        "doubling_checks": {str(n): ok for n, ok in doubling.items()},
        "polynomial_trend": _polynomial_trend(counts),
        "dplus_bracket": dplus_bracket(None, upper),
        "growth": summary,
    }
