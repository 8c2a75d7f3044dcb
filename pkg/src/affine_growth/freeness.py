"""Positive independence of pairs of affine maps.

Two certificates are produced, and they never overlap:

* a ping-pong certificate (a place where both homotheties contract and the
  fixed points differ) proves the pair freely generates a free semigroup;
* a relation witness (two distinct positive words with equal value) proves
  it does not.

Relation witnesses come from exhaustive breadth-first search over positive
words with exact deduplication, plus three structured constructions: the
translation/homothety relation obtained from an integer polynomial killing
the ratio, and reductions of homothety pairs to a translation or to a pair
of equal ratio by taking powers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import poly as P
from .affine import AffineMap, Word, canonical_pair, eval_word
from .config import DEFAULT, Config
from .errors import (
    EqualFixedPoints,
    MemoryBudget,
    NormFactorizationBudget,
    NotHomothety,
    NotTwoHomotheties,
    PlaceRingMismatch,
    RequiresField,
    ZeroDivisor,
)
from .field import ModulusRing, RingElement
from .places import (
    THIRD,
    AbsEnclosure,
    ArchimedeanPlace,
    PAdicPlace,
    Place,
    TAdicPlace,
    abs_poly_at,
    candidate_primes,
    isolate_roots,
    place_from_json,
    polygon_valuations,
    rational_roots,
    refine_place,
    tadic_order,
    verify_root_box,
    vp,
)

A, B = 0, 1
POWER_LINK_BOUND = 12


@dataclass(frozen=True)
class RelationWitness:
    """Two distinct positive words in the letters a (first map) and b
    (second map) that evaluate to the same element."""

    u: Word
    v: Word

    def swapped(self) -> "RelationWitness":
        swap = [Word(((B, 1),)), Word(((A, 1),))]
        return RelationWitness(self.u.substitute(swap), self.v.substitute(swap))

    def to_json(self) -> dict:
        return {"u": self.u.render(), "v": self.v.render()}

    @classmethod
    def from_json(cls, obj: dict) -> "RelationWitness":
        return cls(Word.parse(obj["u"]), Word.parse(obj["v"]))


@dataclass(frozen=True)
class PingPongCertificate:
    pair: tuple[AffineMap, AffineMap]
    place: Place
    ratios: tuple[RingElement, RingElement]
    fixed_points: tuple[RingElement, RingElement]
    # AbsEnclosure pairs at archimedean places, valuations otherwise
    ratio_bounds: tuple
    margin: Optional[Fraction] = None
    link: dict = field(default_factory=dict)


class Verdict(str, enum.Enum):
    FREE = "free"
    NOT_FREE = "notfree"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FreenessVerdict:
    tag: Verdict
    pair: tuple[AffineMap, AffineMap]
    certificate: Optional[PingPongCertificate] = None
    witness: Optional[RelationWitness] = None
    report: dict = field(default_factory=dict)


def _shortlex(w: Word):
    return (len(w), w.letters)


def _ordered(u: Word, v: Word) -> RelationWitness:
    return RelationWitness(u, v) if _shortlex(u) <= _shortlex(v) else RelationWitness(v, u)


# -- relation checking ----------------------------------------------------


def verify_relation(witness: RelationWitness, f: AffineMap, g: AffineMap) -> bool:
    u, v = witness.u, witness.v
    if u == v or not u.is_positive or not v.is_positive or not len(u) or not len(v):
        return False
    return eval_word(u, [f, g]) == eval_word(v, [f, g])


def translation_relation(pi) -> RelationWitness:
    """Words ``b^{p0} a b^{p1} a ... a b^{pd}`` and the same with the
    coefficients of Q, where ``pi = P - Q`` splits the coefficients into
    positive and negative parts.  They agree for a = (x, 0), b = (1, 1) over
    Q[X]/(pi), since their translation parts differ by pi(x)."""
    coeffs = [Fraction(c) for c in P.strip(pi)]
    if not coeffs:
        raise ValueError("zero polynomial")
    if any(c.denominator != 1 for c in coeffs):
        _, coeffs = P.content_primitive(coeffs)
    coeffs = [int(c) for c in coeffs]

    def word(cs):
        letters = []
        for i, c in enumerate(cs):
            if i:
                letters.append((A, 1))
            letters.extend([(B, 1)] * c)
        return Word(tuple(letters))

    pos = [max(c, 0) for c in coeffs]
    neg = [max(-c, 0) for c in coeffs]
    return RelationWitness(word(pos), word(neg))


def ratio_reduce(f: AffineMap, g: AffineMap) -> tuple[RingElement, RingElement]:
    """The dilation ratios, which are all that freeness depends on for a pair
    of homotheties with distinct fixed points."""
    if not (f.is_homothety and g.is_homothety):
        raise NotTwoHomotheties("both maps must be homotheties")
    if f.fixed_point() == g.fixed_point():
        raise EqualFixedPoints("the maps share their fixed point")
    return f.a, g.a


# -- relation search ------------------------------------------------------


def find_relation(f: AffineMap, g: AffineMap, max_len: int,
                  memory_budget: int = DEFAULT.memory_budget_elements) -> Optional[RelationWitness]:
    """Breadth-first search over positive words by length, keeping one
    representative (the shortlex-first word) per value.

    If no collision occurs up to ``max_len``, all positive words of length at
    most ``max_len`` have distinct values.  Otherwise the shortlex-smallest
    colliding pair at the first colliding length is returned.
    """
    gens = (f, g)
    seen: dict[AffineMap, Word] = {}
    frontier: list[tuple[Word, AffineMap]] = []
    collisions: list[RelationWitness] = []
    for s in (A, B):
        w = Word(((s, 1),))
        val = gens[s]
        if val in seen:
            collisions.append(_ordered(seen[val], w))
        else:
            seen[val] = w
            frontier.append((w, val))
    length = 1
    while not collisions and length < max_len and frontier:
        length += 1
        nxt = []
        for w, val in frontier:
            for s in (A, B):
                nw = Word(w.letters + ((s, 1),))
                nv = val * gens[s]
                prev = seen.get(nv)
                if prev is not None:
                    collisions.append(_ordered(prev, nw))
                else:
                    seen[nv] = nw
                    nxt.append((nw, nv))
            if len(seen) > memory_budget:
                raise MemoryBudget(f"relation search exceeded {memory_budget} elements",
                                   partial=length)
        frontier = nxt
    if not collisions:
        return None
    return min(collisions, key=lambda r: (_shortlex(r.u), _shortlex(r.v)))


def _power_word(letter: int, k: int) -> Word:
    return Word(((letter, 1),) * k)


def _relation_from_polynomial(h_idx: int, t_word: Word, poly) -> RelationWitness:
    """Translation relation for a homothety (letter h_idx) and a translation
    given as a positive word, killing the ratio via ``poly``."""
    base = translation_relation(poly)
    images = [Word(((h_idx, 1),)), t_word]
    return RelationWitness(base.u.substitute(images), base.v.substitute(images))


def _annihilating_poly(alpha: RingElement):
    """An integer polynomial vanishing at alpha, or None if alpha is
    transcendental (non-constant in Q(t))."""
    if alpha.ring.is_number_ring:
        return P.content_primitive(alpha.charpoly())[1]
    c = alpha.constant_value()
    if c is None:
        return None
    return P.content_primitive((-c, Fraction(1)))[1]


def _translation_homothety(f, g) -> Optional[RelationWitness]:
    if f.is_homothety and g.is_translation:
        h_idx, t_idx, alpha = A, B, f.a
    elif g.is_homothety and f.is_translation:
        h_idx, t_idx, alpha = B, A, g.a
    else:
        return None
    poly = _annihilating_poly(alpha)
    if poly is None:
        return None
    return _relation_from_polynomial(h_idx, Word(((t_idx, 1),)), poly)


def _homothety_reductions(f, g, config: Config) -> Optional[RelationWitness]:
    """Reduce a homothety pair by powers: either some ``f^i g^j`` is a
    translation (then use the translation relation with f) or ``f^i`` and
    ``g^j`` share a ratio (then search relations of the powered pair)."""
    R = config.reduction_bound
    alpha, beta = f.a, g.a
    try:
        beta_inv = beta.inv()
    except ZeroDivisor:
        return None
    alpha_pows: dict[RingElement, int] = {}
    a = alpha
    for i in range(1, R + 1):
        alpha_pows.setdefault(a, i)
        a = a * alpha
    inverse_hits, equal_hits = [], []
    b = beta
    bi = beta_inv
    for j in range(1, R + 1):
        if bi in alpha_pows:
            inverse_hits.append((alpha_pows[bi], j))
        if b in alpha_pows and (alpha_pows[b], j) != (1, 1):
            equal_hits.append((alpha_pows[b], j))
        b = b * beta
        bi = bi * beta_inv
    for i, j in sorted(inverse_hits, key=lambda ij: (ij[0] + ij[1], ij)):
        t_word = _power_word(A, i) + _power_word(B, j)
        t = (f ** i) * (g ** j)
        if t.is_identity:
            u = t_word + Word(((A, 1),))
            v = Word(((A, 1),)) + t_word
            wit = _ordered(u, v)
        else:
            poly = _annihilating_poly(alpha)
            if poly is None:
                continue
            wit = _relation_from_polynomial(A, t_word, poly)
        if verify_relation(wit, f, g):
            return wit
    for i, j in sorted(equal_hits, key=lambda ij: (ij[0] + ij[1], ij)):
        F, G = f ** i, g ** j
        try:
            base = find_relation(F, G, config.reduced_max_len, config.memory_budget_elements)
        except MemoryBudget:
            continue
        if base is None:
            continue
        images = [_power_word(A, i), _power_word(B, j)]
        wit = RelationWitness(base.u.substitute(images), base.v.substitute(images))
        if verify_relation(wit, f, g):
            return wit
    return None


def refute_pair(f: AffineMap, g: AffineMap, config: Config = DEFAULT,
                max_len: Optional[int] = None) -> Optional[RelationWitness]:
    """Look for a positive relation between f and g; None if none is found
    within the configured budgets."""
    if f == g:
        return RelationWitness(Word(((A, 1),)), Word(((B, 1),)))
    if f * g == g * f:
        return RelationWitness(Word(((A, 1), (B, 1))), Word(((B, 1), (A, 1))))
    direct_len = config.relation_max_len if max_len is None else max_len
    try:
        wit = find_relation(f, g, min(direct_len, config.reduced_max_len),
                            config.memory_budget_elements)
    except MemoryBudget:
        wit = None
    if wit is not None:
        return wit
    wit = _translation_homothety(f, g)
    if wit is None and f.is_homothety and g.is_homothety:
        wit = _homothety_reductions(f, g, config)
    if wit is not None and verify_relation(wit, f, g):
        return wit
    if direct_len > config.reduced_max_len:
        try:
            return find_relation(f, g, direct_len, config.memory_budget_elements)
        except MemoryBudget:
            return None
    return None


# -- ping-pong certificates -----------------------------------------------


def _distinct_at(diff: RingElement, place: Place, bits: int) -> bool:
    """Is the fixed-point difference nonzero under the embedding?"""
    try:
        diff.inv()
        return True
    except ZeroDivisor:
        pass
    if isinstance(place, ArchimedeanPlace):
        return abs_poly_at(diff.lift(), place, bits).lo > 0
    return False


def _power_link(alpha: RingElement, beta: RingElement) -> Optional[tuple[int, int]]:
    """Smallest (i, j) with alpha^i == beta^j, i, j >= 1."""
    pows = {}
    a = alpha
    for i in range(1, POWER_LINK_BOUND + 1):
        pows.setdefault(a, i)
        a = a * alpha
    b = beta
    for j in range(1, POWER_LINK_BOUND + 1):
        if b in pows:
            return pows[b], j
        b = b * beta
    return None


def _padic_bounds(alpha, beta, place: PAdicPlace):
    """Valuations of the two ratios at a common place above p, with the
    argument linking them; None if no common contracting place is certified."""
    ring = alpha.ring
    p = place.prime
    if ring.degree == 1:
        va, vb = vp(alpha.coeffs[0], p), vp(beta.coeffs[0], p)
        if va is not None and vb is not None and va > 0 and vb > 0:
            return (Fraction(va), Fraction(vb)), {"kind": "rational"}
        return None
    if not ring.is_field:
        return None
    vals_a = polygon_valuations(alpha.charpoly(), p)
    vals_b = polygon_valuations(beta.charpoly(), p)
    if vals_a[0] > 0 and vals_b[0] > 0:
        return (vals_a[0], vals_b[0]), {"kind": "all_positive"}
    if place.slope > 0 and place.slope in vals_a:
        link = _power_link(alpha, beta)
        if link is not None:
            i, j = link
            return (place.slope, place.slope * i / j), {"kind": "power", "i": i, "j": j}
    return None


def check_pingpong(f: AffineMap, g: AffineMap, place: Place,
                   precision_bits: int = 64, max_bits: int = 1024) -> Optional[PingPongCertificate]:
    """Certificate iff the fixed points differ and both ratios contract at
    ``place`` (<= 1/3 archimedean, positive valuation otherwise)."""
    if not (f.is_homothety and g.is_homothety):
        raise NotHomothety("ping-pong needs two homotheties")
    ring = f.ring
    try:
        p, q = f.fixed_point(), g.fixed_point()
    except ZeroDivisor:
        return None
    if p == q:
        return None
    alpha, beta = f.a, g.a
    if isinstance(place, ArchimedeanPlace):
        if not ring.is_number_ring or tuple(place.modulus) != tuple(ring.modulus):
            raise PlaceRingMismatch("archimedean place of another modulus")
        bits = precision_bits
        while True:
            ea = abs_poly_at(alpha.lift(), place, bits)
            eb = abs_poly_at(beta.lift(), place, bits)
            if ea.lo > THIRD or eb.lo > THIRD:
                return None
            if ea.hi <= THIRD and eb.hi <= THIRD:
                break
            bits *= 2
            if bits > max_bits:
                return None
            place = refine_place(place, bits)
        if not _distinct_at(p - q, place, bits) or not verify_root_box(place):
            return None
        return PingPongCertificate((f, g), place, (alpha, beta), (p, q), (ea, eb),
                                   THIRD - max(ea.hi, eb.hi))
    if isinstance(place, TAdicPlace):
        if ring.is_number_ring:
            raise PlaceRingMismatch("t-adic place on a number ring")
        oa, ob = tadic_order(alpha, place.center), tadic_order(beta, place.center)
        if oa is None or ob is None or oa <= 0 or ob <= 0:
            return None
        return PingPongCertificate((f, g), place, (alpha, beta), (p, q),
                                   (Fraction(oa), Fraction(ob)))
    if isinstance(place, PAdicPlace):
        if not ring.is_number_ring:
            raise PlaceRingMismatch("p-adic place on Q(t)")
        if not _distinct_at(p - q, place, precision_bits):
            return None
        found = _padic_bounds(alpha, beta, place)
        if found is None:
            return None
        bounds, link = found
        return PingPongCertificate((f, g), place, (alpha, beta), (p, q), bounds, link=link)
    raise TypeError(f"unknown place {place!r}")


def candidate_places(f: AffineMap, g: AffineMap, config: Config = DEFAULT) -> list[Place]:
    """Deterministic order: archimedean by root index, then t-adic, then
    p-adic by prime."""
    ring = f.ring
    out: list[Place] = []
    if ring.is_number_ring:
        out.extend(isolate_roots(ring.modulus, config.precision_bits))
    else:
        centers = set()
        for alpha in (f.a, g.a):
            centers.update(rational_roots(alpha.numerator))
        finite = sorted(centers)
        out.extend(TAdicPlace(c) for c in finite)
        out.append(TAdicPlace(None))
        return out
    if ring.degree == 1 or ring.is_field:
        primes: set[int] = set()
        for alpha in (f.a, g.a):
            cp = alpha.charpoly()
            found, _ = candidate_primes(cp, config.trial_division_bound)
            primes.update(found)
        for p in sorted(primes):
            vals = polygon_valuations(f.a.charpoly(), p)
            if vals[-1] > 0:
                out.append(PAdicPlace(p, vals[-1]))
    return out


def search_freeness_certificate(f: AffineMap, g: AffineMap,
                                config: Config = DEFAULT) -> Optional[PingPongCertificate]:
    """First certificate over :func:`candidate_places`, or None."""
    if f.ring != g.ring:
        raise PlaceRingMismatch("maps over different rings")
    if not (f.is_homothety and g.is_homothety):
        return None
    for place in candidate_places(f, g, config):
        cert = check_pingpong(f, g, place, config.precision_bits)
        if cert is not None:
            return cert
    return None


def decide_pair(f: AffineMap, g: AffineMap, config: Config = DEFAULT) -> FreenessVerdict:
    """Free (ping-pong certificate), NotFree (relation witness) or Unknown.

    The certificate search runs first; a certified pair is never handed to
    the relation search, so the two outcomes cannot both occur.
    """
    cert = search_freeness_certificate(f, g, config)
    if cert is not None:
        return FreenessVerdict(Verdict.FREE, (f, g), certificate=cert)
    wit = refute_pair(f, g, config)
    if wit is not None:
        return FreenessVerdict(Verdict.NOT_FREE, (f, g), witness=wit)
    report = {
        "relation_max_len": config.relation_max_len,
        "reduction_bound": config.reduction_bound,
        "reduced_max_len": config.reduced_max_len,
        "precision_bits": config.precision_bits,
        "places_tried": len(candidate_places(f, g, config))
        if f.is_homothety and g.is_homothety else 0,
    }
    return FreenessVerdict(Verdict.UNKNOWN, (f, g), report=report)


# -- JSON ------------------------------------------------------------------

SCHEMA = "v1"


def _bound_json(b):
    if isinstance(b, AbsEnclosure):
        return b.to_json()
    return str(b)


def verdict_to_json(verdict: FreenessVerdict) -> dict:
    f, g = verdict.pair
    out = {
        "schema": SCHEMA,
        "verdict": verdict.tag.value,
        "ring": f.ring.to_json(),
        "pair": [f.to_json(), g.to_json()],
    }
    if verdict.certificate is not None:
        out.update(certificate_to_json(verdict.certificate))
    if verdict.witness is not None:
        out["witness"] = verdict.witness.to_json()
    if verdict.tag is Verdict.UNKNOWN:
        out["budget"] = dict(verdict.report)
    return out


def certificate_to_json(cert: PingPongCertificate) -> dict:
    out = {
        "place": cert.place.to_json(),
        "ratios": [r.to_json() for r in cert.ratios],
        "fixed_points": [p.to_json() for p in cert.fixed_points],
        "ratio_bounds": [_bound_json(b) for b in cert.ratio_bounds],
    }
    if cert.margin is not None:
        out["margin"] = str(cert.margin)
    if cert.link:
        out["link"] = dict(cert.link)
    return out


def check_json(obj: dict) -> tuple[bool, str]:
    """Re-validate an emitted verdict from its JSON alone, exactly."""
    try:
        if obj.get("schema") != SCHEMA:
            return False, "unknown schema"
        ring = ModulusRing.from_json(obj["ring"])
        f, g = (AffineMap.from_json(ring, m) for m in obj["pair"])
        tag = Verdict(obj["verdict"])
        if tag is Verdict.NOT_FREE:
            wit = RelationWitness.from_json(obj["witness"])
            if verify_relation(wit, f, g):
                return True, "relation verified"
            return False, "relation does not hold"
        if tag is Verdict.UNKNOWN:
            return True, "unknown verdict carries no claim"
        return _check_certificate(ring, f, g, obj)
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        return False, f"malformed: {exc}"


def _check_certificate(ring, f, g, obj) -> tuple[bool, str]:
    if not (f.is_homothety and g.is_homothety):
        return False, "pair is not two homotheties"
    ratios = [ring.element_from_json(r) for r in obj["ratios"]]
    if ratios != [f.a, g.a]:
        return False, "ratios do not match the pair"
    fps = [ring.element_from_json(p) for p in obj["fixed_points"]]
    p, q = f.fixed_point(), g.fixed_point()
    if fps != [p, q] or p == q:
        return False, "fixed points do not match or coincide"
    place = place_from_json(obj["place"])
    if isinstance(place, ArchimedeanPlace):
        if tuple(place.modulus) != tuple(ring.modulus):
            return False, "place belongs to another modulus"
        if not verify_root_box(place):
            return False, "root box does not isolate a root"
        bits = 64
        for alpha in (f.a, g.a):
            if abs_poly_at(alpha.lift(), place, bits).hi > THIRD:
                return False, "ratio not certified <= 1/3"
        if not _distinct_at(p - q, place, bits):
            return False, "fixed points may coincide at this place"
        return True, "archimedean ping-pong verified"
    if isinstance(place, TAdicPlace):
        for alpha in (f.a, g.a):
            o = tadic_order(alpha, place.center)
            if o is None or o <= 0:
                return False, "ratio does not vanish at the center"
        return True, "t-adic ping-pong verified"
    if not _distinct_at(p - q, place, 64):
        return False, "fixed point difference is a zero divisor"
    if ring.degree > 1 and not ring.is_field:
        return False, "p-adic certificate needs a field"
    found = _padic_bounds(f.a, g.a, place)
    if found is None:
        return False, "valuations not certified positive"
    return True, "p-adic ping-pong verified"


def conjugate_pair(f: AffineMap, g: AffineMap, w: AffineMap) -> tuple[AffineMap, AffineMap]:
    return f.conjugate(w), g.conjugate(w)


__all__ = [
    "RelationWitness", "PingPongCertificate", "FreenessVerdict", "Verdict",
    "verify_relation", "translation_relation", "ratio_reduce", "find_relation",
    "refute_pair", "check_pingpong", "search_freeness_certificate", "decide_pair",
    "verdict_to_json", "check_json", "candidate_places", "canonical_pair",
    "conjugate_pair", "NormFactorizationBudget", "RequiresField",
]
