"""Ball sizes, entropy brackets and the radius of positive independence.

For a finite symmetric generating set S containing the identity, ``S^n`` is
the ball of radius n.  Its size gives rigorous upper bounds
``(1/n) log #S^n`` on the entropy, and a free pair inside ``S^n`` gives the
lower bound ``log 2 / n``.  The smallest such n is bracketed from above by
ping-pong certificates and from below by refuting every pair in a ball.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .affine import AffineMap
from .config import DEFAULT, Config
from .errors import MemoryBudget, PreconditionError, ZeroDivisor
from .freeness import (
    PingPongCertificate,
    RelationWitness,
    check_pingpong,
    refute_pair,
    verify_relation,
)
from .places import (
    THIRD,
    ArchimedeanPlace,
    PAdicPlace,
    TAdicPlace,
    abs_arch,
    candidate_primes,
    isolate_roots,
    polygon_valuations,
    rational_roots,
    tadic_order,
    vp,
)


def map_key(f: AffineMap):
    """Total order on maps of one ring, used wherever order matters."""
    return (f.a.data, f.b.data)


@dataclass(frozen=True)
class GeneratingSet:
    """Generators plus, when ``symmetric``, their inverses; always with the
    identity.  Elements are kept in canonical order so results do not depend
    on how the generators were listed."""

    raw: tuple[AffineMap, ...]
    names: tuple[str, ...] = ()
    symmetric: bool = True
    elements: tuple[AffineMap, ...] = field(init=False, repr=False)
    labels: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.raw:
            raise PreconditionError("empty generating set")
        names = self.names or tuple(chr(ord("A") + i) for i in range(len(self.raw)))
        object.__setattr__(self, "names", tuple(names))
        labelled: dict[AffineMap, str] = {AffineMap.identity(self.raw[0].ring): "e"}
        for name, g in zip(names, self.raw):
            labelled.setdefault(g, name)
            if self.symmetric:
                labelled.setdefault(g.inverse(), f"{name}^-1")
        order = sorted(labelled, key=lambda g: (not g.is_identity, map_key(g)))
        object.__setattr__(self, "elements", tuple(order))
        object.__setattr__(self, "labels", tuple(labelled[g] for g in order))

    @property
    def ring(self):
        return self.raw[0].ring

    def __len__(self):
        return len(self.elements)

    def render(self, word: Sequence[int]) -> str:
        if not word:
            return "e"
        return " ".join(self.labels[i] for i in word)

    def describe(self) -> list[str]:
        return [f"{lab} = {g}" for lab, g in zip(self.labels, self.elements)]


@dataclass
class Ball:
    """Elements of the ball with their radius and a shortest word (indices
    into the generating set's elements)."""

    sigma: GeneratingSet
    radius: dict[AffineMap, int] = field(default_factory=dict)
    word: dict[AffineMap, tuple[int, ...]] = field(default_factory=dict)
    reached: int = 0
    truncated: bool = False

    def at_most(self, n: int) -> list[AffineMap]:
        out = [g for g, r in self.radius.items() if r <= n]
        out.sort(key=lambda g: (self.radius[g], map_key(g)))
        return out

    def render(self, g: AffineMap) -> str:
        return self.sigma.render(self.word[g])


def grow_ball(sigma: GeneratingSet, n_max: int,
              memory_budget: int = DEFAULT.memory_budget_elements) -> Ball:
    """Frontier breadth-first search with exact deduplication.

    Stops early with ``truncated`` set once the ball holds more than
    ``memory_budget`` elements.
    """
    if n_max < 0:
        raise PreconditionError("n_max must be non-negative")
    ident = sigma.elements[0]
    ball = Ball(sigma, {ident: 0}, {ident: ()})
    steps = [(i, g) for i, g in enumerate(sigma.elements) if not g.is_identity]
    frontier = [ident]
    for n in range(1, n_max + 1):
        nxt = []
        for x in frontier:
            wx = ball.word[x]
            for i, s in steps:
                y = x * s
                if y not in ball.radius:
                    ball.radius[y] = n
                    ball.word[y] = wx + (i,)
                    nxt.append(y)
        frontier = nxt
        ball.reached = n
        if len(ball.radius) > memory_budget:
            ball.truncated = True
            break
    return ball


@dataclass(frozen=True)
class GrowthRow:
    n: int
    count: int

    def upper_bits(self) -> Optional[float]:
        """``log2(#S^n) / n``; None at n = 0."""
        return math.log2(self.count) / self.n if self.n else None


@dataclass
class GrowthTable:
    rows: list[GrowthRow]
    truncated: bool = False
    dplus_status: dict[int, str] = field(default_factory=dict)
    ball: Optional[Ball] = field(default=None, repr=False, compare=False)

    def count(self, n: int) -> int:
        return self.rows[n].count

    @property
    def n_max(self) -> int:
        return self.rows[-1].n

    def is_submultiplicative(self) -> bool:
        c = [r.count for r in self.rows]
        top = len(c) - 1
        return all(c[i + j] <= c[i] * c[j]
                   for i in range(top + 1) for j in range(top + 1 - i))

    def doubling_ok(self, n: int) -> bool:
        """Exact form of ``(1/2n) log #S^{2n} <= (1/n) log #S^n``."""
        return self.count(2 * n) <= self.count(n) ** 2

    def is_monotone(self) -> bool:
        c = [r.count for r in self.rows]
        return c[0] == 1 and all(a <= b for a, b in zip(c, c[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "ball_size", "upper_bound_bits", "dplus_status"])
        for r in self.rows:
            bits = r.upper_bits()
            w.writerow([r.n, r.count, "" if bits is None else f"{bits:.12f}",
                        self.dplus_status.get(r.n, "unexplored")])
        return buf.getvalue()


def ball_sizes(sigma: GeneratingSet, n_max: int,
               memory_budget: int = DEFAULT.memory_budget_elements) -> GrowthTable:
    """Exact ``#S^n`` for n <= n_max (fewer rows, flagged, if the memory
    budget is hit)."""
    if n_max < 1:
        raise PreconditionError("n_max must be at least 1")
    ball = grow_ball(sigma, n_max, memory_budget)
    counts = [0] * (ball.reached + 1)
    for r in ball.radius.values():
        counts[r] += 1
    rows, total = [], 0
    for n, c in enumerate(counts):
        total += c
        rows.append(GrowthRow(n, total))
    return GrowthTable(rows, ball.truncated, ball=ball)


# -- entropy ---------------------------------------------------------------


@dataclass(frozen=True)
class EntropyBounds:
    """``lower = lower_log2 * log 2`` and uppers ``(1/n) log #S^n``."""

    lower_log2: Fraction
    uppers: tuple[tuple[int, int], ...]

    @property
    def lower(self) -> float:
        return float(self.lower_log2) * math.log(2)

    def upper_values(self) -> list[tuple[int, float]]:
        return [(n, math.log(c) / n) for n, c in self.uppers]

    @property
    def best_upper(self) -> Optional[float]:
        vals = [v for _, v in self.upper_values()]
        return min(vals) if vals else None

    def lower_below(self, n: int, count: int) -> bool:
        """Exact check of ``lower <= (1/n) log count``."""
        if self.lower_log2 == 0:
            return count >= 1
        p, q = self.lower_log2.numerator, self.lower_log2.denominator
        # (p/q) log 2 <= (1/n) log c  <=>  2^(p n) <= c^q
        return 2 ** (p * n) <= count ** q

    def consistent(self) -> bool:
        return all(self.lower_below(n, c) for n, c in self.uppers)


def entropy_bounds(table: GrowthTable, dplus_radius: Optional[int]) -> EntropyBounds:
    if not table.rows:
        raise PreconditionError("empty growth table")
    lower = Fraction(1, dplus_radius) if dplus_radius else Fraction(0)
    uppers = tuple((r.n, r.count) for r in table.rows if r.n >= 1)
    return EntropyBounds(lower, uppers)


# -- upper bound on the radius: certificates -------------------------------


def _place_key(place) -> tuple:
    if isinstance(place, ArchimedeanPlace):
        return (0, place.index)
    if isinstance(place, TAdicPlace):
        return (1, place.center is None, place.center or 0)
    return (2, place.prime)


class _ContractionCache:
    """Per-ratio list of places where the ratio contracts, computed once."""

    def __init__(self, ring, config: Config):
        self.ring = ring
        self.config = config
        self.cache: dict = {}
        self.places = (isolate_roots(ring.modulus, config.precision_bits)
                       if ring.is_number_ring else [])
        self.padic_ok = ring.is_number_ring and (ring.degree == 1 or ring.is_field)

    def __call__(self, alpha) -> dict[tuple, object]:
        hit = self.cache.get(alpha)
        if hit is not None:
            return hit
        out: dict[tuple, object] = {}
        if self.ring.is_number_ring:
            for pl in self.places:
                if abs_arch(alpha, pl, self.config.precision_bits).hi <= THIRD:
                    out[_place_key(pl)] = pl
            if self.padic_ok:
                cp = alpha.charpoly()
                primes, _ = candidate_primes(cp, self.config.trial_division_bound)
                for p in primes:
                    if self.ring.degree == 1:
                        v = vp(alpha.coeffs[0], p)
                        slope = Fraction(v) if v else Fraction(0)
                    else:
                        slope = polygon_valuations(cp, p)[-1]
                    if slope > 0:
                        pl = PAdicPlace(p, slope)
                        out[_place_key(pl)] = pl
        else:
            centers = sorted(rational_roots(alpha.numerator))
            for c in centers + [None]:
                o = tadic_order(alpha, c)
                if o is not None and o > 0:
                    pl = TAdicPlace(c)
                    out[_place_key(pl)] = pl
        self.cache[alpha] = out
        return out


@dataclass(frozen=True)
class DplusUpper:
    n: int
    pair: tuple[AffineMap, AffineMap]
    words: tuple[str, str]
    certificate: PingPongCertificate


def _distinct_fixed(f: AffineMap, g: AffineMap) -> bool:
    try:
        return f.fixed_point() != g.fixed_point()
    except ZeroDivisor:
        return False


def dplus_upper(sigma: GeneratingSet, n_max: int, config: Config = DEFAULT,
                ball: Optional[Ball] = None) -> Optional[DplusUpper]:
    """Smallest n <= n_max such that some pair in ``S^n`` has a ping-pong
    certificate.

    At each radius, pairs with a common ratio (conjugate pairs) are tried
    before the rest; within each group pairs follow (radius, canonical
    order).  Only pairs involving a new element are examined at each radius.
    """
    if ball is None or ball.reached < n_max:
        ball = grow_ball(sigma, n_max, config.memory_budget_elements)
    contracting = _ContractionCache(sigma.ring, config)
    tried: set = set()
    for n in range(1, min(n_max, ball.reached) + 1):
        elems = [g for g in ball.at_most(n) if g.is_homothety]
        by_ratio: dict = {}
        for g in elems:
            by_ratio.setdefault(g.a, []).append(g)
        ratios = [r for r in by_ratio if contracting(r)]
        pairs = []
        for r in ratios:
            group = by_ratio[r]
            for i, f in enumerate(group):
                for g in group[i + 1:]:
                    pairs.append((0, f, g))
        for i, r in enumerate(ratios):
            for s in ratios[i + 1:]:
                common = contracting(r).keys() & contracting(s).keys()
                if not common:
                    continue
                for f in by_ratio[r]:
                    for g in by_ratio[s]:
                        pairs.append((1, f, g))
        pairs.sort(key=lambda t: (t[0], max(ball.radius[t[1]], ball.radius[t[2]]),
                                  map_key(t[1]), map_key(t[2])))
        for _, f, g in pairs:
            key = (f, g)
            if key in tried:
                continue
            tried.add(key)
            if not _distinct_fixed(f, g):
                continue
            pf, pg = contracting(f.a), contracting(g.a)
            for pk in sorted(pf.keys() & pg.keys()):
                cert = check_pingpong(f, g, pf[pk], config.precision_bits)
                if cert is not None:
                    return DplusUpper(n, (f, g), (ball.render(f), ball.render(g)), cert)
    return None


# -- lower bound on the radius: refutations --------------------------------


@dataclass(frozen=True)
class Refutation:
    left: str
    right: str
    reason: str
    witness: Optional[RelationWitness] = None


@dataclass
class DplusLower:
    """Every pair in ``S^m`` is refuted, hence the radius is at least m + 1."""

    m: int
    probed: int
    log: list[Refutation] = field(default_factory=list)
    unresolved: list[tuple[str, str]] = field(default_factory=list)

    @property
    def implied_lower(self) -> int:
        return self.m + 1


class _Refuter:
    """Refutes pairs, reusing witnesses across pairs with the same ratios
    (relations depend only on the ratios up to conjugation)."""

    def __init__(self, config: Config):
        self.config = config
        self.by_ratio: dict = {}

    def __call__(self, f: AffineMap, g: AffineMap) -> tuple[str, Optional[RelationWitness]]:
        if f * g == g * f:
            return "commute", None
        key = (f.a, g.a)
        cached = self.by_ratio.get(key)
        if cached is not None and verify_relation(cached, f, g):
            return "ratio_table", cached
        wit = refute_pair(f, g, self.config)
        if wit is None:
            return "unknown", None
        self.by_ratio.setdefault(key, wit)
        return "relation", wit


def dplus_lower(sigma: GeneratingSet, n_probe: int, config: Config = DEFAULT,
                ball: Optional[Ball] = None) -> DplusLower:
    """Largest m <= n_probe such that every pair of distinct elements of
    ``S^m`` satisfies a positive relation.  The first unrefuted pair halts
    the climb at the previous radius and is reported."""
    if ball is None or ball.reached < n_probe:
        ball = grow_ball(sigma, n_probe, config.memory_budget_elements)
    refute = _Refuter(config)
    result = DplusLower(0, 0)
    for m in range(1, min(n_probe, ball.reached) + 1):
        elems = ball.at_most(m)
        result.probed = m
        done_before = set(ball.at_most(m - 1))
        for i, f in enumerate(elems):
            for g in elems[i + 1:]:
                if f in done_before and g in done_before:
                    continue
                reason, wit = refute(f, g)
                if reason == "unknown":
                    result.unresolved.append((ball.render(f), ball.render(g)))
                    return result
                result.log.append(Refutation(ball.render(f), ball.render(g), reason, wit))
        result.m = m
    return result


def annotate_dplus(table: GrowthTable, lower: Optional[DplusLower],
                   upper: Optional[DplusUpper]) -> None:
    """Fill ``dplus_status`` per radius."""
    for row in table.rows:
        n = row.n
        if n == 0:
            continue
        if upper is not None and n >= upper.n:
            status = "cert_found"
        elif lower is not None and n <= lower.m:
            status = "all_refuted"
        elif lower is not None and n <= lower.probed:
            status = "mixed"
        else:
            status = "unexplored"
        table.dplus_status[n] = status


def dplus_bracket(lower: Optional[DplusLower], upper: Optional[DplusUpper]):
    """``[lo, hi]`` with hi None when no certificate was found."""
    lo = lower.implied_lower if lower is not None else 1
    return [lo, upper.n if upper is not None else None]


# -- positive words of a pair ----------------------------------------------


def count_positive_words(f: AffineMap, g: AffineMap, n_max: int,
                         memory_budget: int = DEFAULT.memory_budget_elements) -> list[int]:
    """Number of distinct values of positive words of each length 1..n_max."""
    if f.ring != g.ring:
        raise PreconditionError("maps over different rings")
    level = {f, g}
    counts = [len(level)]
    for _ in range(2, n_max + 1):
        level = {x * s for x in level for s in (f, g)}
        if len(level) > memory_budget:
            raise MemoryBudget(f"level exceeds {memory_budget} elements", partial=counts)
        counts.append(len(level))
    return counts


def growth_summary(table: GrowthTable, lower: Optional[DplusLower],
                   upper: Optional[DplusUpper]) -> dict:
    from .freeness import certificate_to_json

    bounds = entropy_bounds(table, upper.n if upper else None)
    certs = []
    if upper is not None:
        cert = certificate_to_json(upper.certificate)
        cert.update({"radius": upper.n, "words": list(upper.words),
                     "pair": [m.to_json() for m in upper.pair]})
        certs.append(cert)
    return {
        "schema": "v1",
        "rows": [{"n": r.n, "ball_size": r.count,
                  "upper_bound_bits": None if r.n == 0 else f"{r.upper_bits():.12f}",
                  "dplus_status": table.dplus_status.get(r.n, "unexplored")}
                 for r in table.rows],
        "truncated": table.truncated,
        "entropy_lower": {"log2_coefficient": str(bounds.lower_log2),
                          "decimal": f"{bounds.lower:.12f}"},
        "entropy_upper_best": None if bounds.best_upper is None else f"{bounds.best_upper:.12f}",
        "dplus_bracket": dplus_bracket(lower, upper),
        "certificates": certs,
    }
