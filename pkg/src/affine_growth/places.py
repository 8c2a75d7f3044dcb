"""Certified absolute values of ring elements at archimedean and
non-archimedean places.

Archimedean places are complex roots of the modulus.  Roots are first
approximated with mpmath, then *certified* in exact rational arithmetic with
Pellet's test: if the Taylor coefficients q_k of f at a center c satisfy
``|q_1| r > |q_0| + sum_{k>=2} |q_k| r^k`` then f has exactly one root in the
open disc of radius r around c.  Nothing floating-point ever enters an
enclosure.

Non-archimedean places are p-adic valuations read off Newton polygons of
characteristic polynomials, and t-adic orders on Q(t).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

import mpmath

from . import poly as P
from .errors import (
    NormFactorizationBudget,
    NotFoundWithinBound,
    PlaceRingMismatch,
    PreconditionError,
    RequiresField,
)
from .field import ModulusRing, RingElement

THIRD = Fraction(1, 3)

# -- exact helpers --------------------------------------------------------


def sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2^-bits``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative square")
    if q == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    n = q.numerator * scale * scale // q.denominator
    s = isqrt(n)
    lo = Fraction(s, scale)
    if s * s * q.denominator == q.numerator * scale * scale:
        return lo, lo
    return lo, Fraction(s + 1, scale)


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _abs2(x) -> Fraction:
    return x[0] * x[0] + x[1] * x[1]


def taylor_shift(p, center) -> list[tuple[Fraction, Fraction]]:
    """Coefficients of ``p(center + z)`` as complex rational pairs."""
    a = [(Fraction(c), Fraction(0)) for c in p]
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            m = _cmul(center, a[j + 1])
            a[j] = (a[j][0] + m[0], a[j][1] + m[1])
    return a


def pellet_one_root(p, center, radius: Fraction, bits: int = 256) -> bool:
    """True iff Pellet's test certifies exactly one root of ``p`` in the open
    disc ``|z - center| < radius``."""
    q = taylor_shift(p, center)
    if len(q) < 2:
        return False
    if radius == 0:
        return q[0] == (0, 0) and q[1] != (0, 0)
    lhs = sqrt_bounds(_abs2(q[1]), bits)[0] * radius
    rhs = sqrt_bounds(_abs2(q[0]), bits)[1]
    rk = radius
    for k in range(2, len(q)):
        rk *= radius
        if q[k] != (0, 0):
            rhs += sqrt_bounds(_abs2(q[k]), bits)[1] * rk
    return lhs > rhs


def _mpf_to_fraction(x, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(int(mpmath.nint(x * scale)), scale)


def _dyadic_ceil(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    n = -((-q.numerator * scale) // q.denominator)
    return Fraction(n, scale)


# -- places ---------------------------------------------------------------


class PlaceKind(str, enum.Enum):
    ARCHIMEDEAN = "archimedean"
    PADIC = "padic"
    TADIC = "tadic"


@dataclass(frozen=True)
class ArchimedeanPlace:
    """A complex root of ``modulus`` certified to lie in a rational box.

    ``box`` is ``(re_lo, re_hi, im_lo, im_hi)``; the disc circumscribing the
    box contains exactly one root of ``factor`` (a squarefree factor of the
    modulus whose roots have multiplicity ``multiplicity``).
    """

    modulus: tuple[int, ...]
    index: int
    box: tuple[Fraction, Fraction, Fraction, Fraction]
    real: bool
    multiplicity: int = 1
    factor: tuple = field(default=(), compare=False)
    conjugate_index: int | None = field(default=None, compare=False)

    kind = PlaceKind.ARCHIMEDEAN

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        lo_r, hi_r, lo_i, hi_i = self.box
        return (lo_r + hi_r) / 2, (lo_i + hi_i) / 2

    @property
    def radius(self) -> Fraction:
        """Rational upper bound on the half-diagonal of the box."""
        lo_r, hi_r, lo_i, hi_i = self.box
        w, h = (hi_r - lo_r) / 2, (hi_i - lo_i) / 2
        if h == 0:
            return w
        if w == 0:
            return h
        return _dyadic_ceil(sqrt_bounds(w * w + h * h, _bits_of(w) + 8)[1], _bits_of(w) + 8)

    @property
    def width(self) -> Fraction:
        lo_r, hi_r, lo_i, hi_i = self.box
        return max(hi_r - lo_r, hi_i - lo_i)

    def approx(self) -> complex:
        c = self.center
        return complex(float(c[0]), float(c[1]))

    def to_json(self) -> dict:
        return {
            "variant": "archimedean",
            "index": self.index,
            "modulus": list(self.modulus),
            "box": {"re": [str(self.box[0]), str(self.box[1])],
                    "im": [str(self.box[2]), str(self.box[3])]},
            "real": self.real,
            "multiplicity": self.multiplicity,
            "factor": [str(Fraction(c)) for c in self.factor],
        }


@dataclass(frozen=True)
class PAdicPlace:
    """A place above the prime ``p``; ``slope`` is the valuation of the
    chosen conjugate of the ratio that selected it."""

    prime: int
    slope: Fraction

    kind = PlaceKind.PADIC

    def to_json(self) -> dict:
        return {"variant": "padic", "prime": self.prime, "slope": str(self.slope)}


@dataclass(frozen=True)
class TAdicPlace:
    """Order of vanishing at ``t = center`` (``None`` means t = infinity)."""

    center: Fraction | None

    kind = PlaceKind.TADIC

    def to_json(self) -> dict:
        return {"variant": "tadic",
                "center": "inf" if self.center is None else str(self.center)}


Place = Union[ArchimedeanPlace, PAdicPlace, TAdicPlace]


def place_from_json(obj: dict) -> Place:
    v = obj["variant"]
    if v == "padic":
        return PAdicPlace(int(obj["prime"]), Fraction(obj["slope"]))
    if v == "tadic":
        c = obj["center"]
        return TAdicPlace(None if c == "inf" else Fraction(c))
    if v == "archimedean":
        box = tuple(Fraction(s) for s in obj["box"]["re"] + obj["box"]["im"])
        return ArchimedeanPlace(
            tuple(int(c) for c in obj["modulus"]), int(obj["index"]), box,
            bool(obj["real"]), int(obj.get("multiplicity", 1)),
            tuple(Fraction(c) for c in obj.get("factor", [])))
    raise ValueError(f"unknown place variant {v!r}")


def _bits_of(x: Fraction) -> int:
    """Rough number of fractional bits needed to resolve ``x``."""
    if x == 0:
        return 64
    return max(64, x.denominator.bit_length() - x.numerator.bit_length() + 16)


# -- root isolation ----------------------------------------------------------


def _approx_roots(f, dps: int):
    coeffs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator
              for c in reversed(f)]
    steps = 100 + 20 * len(f)
    while True:
        try:
            return mpmath.polyroots(coeffs, maxsteps=steps, extraprec=2 * dps + 50)
        except mpmath.libmp.libhyper.NoConvergence:
            steps *= 4
            if steps > 50000:
                raise


def _isolate_factor(f, bits: int) -> list[tuple]:
    """Certified discs ``(center, radius, real)`` for the simple roots of the
    monic squarefree rational polynomial ``f``."""
    d = len(f) - 1
    if d == 1:
        root = -Fraction(f[0])
        return [((root, Fraction(0)), Fraction(0), True)]
    prec = max(bits, 64) + 32
    for _ in range(8):
        with mpmath.workprec(prec):
            roots = _approx_roots(f, int(prec * 0.302) + 10)
            tol = mpmath.mpf(2) ** (-(prec // 2))
            reals, uppers = [], []
            for z in roots:
                if abs(mpmath.im(z)) <= tol:
                    reals.append(_mpf_to_fraction(mpmath.re(z), prec))
                elif mpmath.im(z) > 0:
                    uppers.append((_mpf_to_fraction(mpmath.re(z), prec),
                                   _mpf_to_fraction(mpmath.im(z), prec)))
        if len(reals) + 2 * len(uppers) != d:
            prec *= 2
            continue
        centers = [((r, Fraction(0)), True) for r in reals]
        for re_, im_ in uppers:
            centers.append(((re_, im_), False))
            centers.append(((re_, -im_), False))
        out = []
        ok = True
        for c, is_real in centers:
            r = _pellet_radius(f, c, prec)
            if r is None or r > Fraction(1, 1 << (bits + 1)):
                ok = False
                break
            out.append((c, r, is_real))
        if ok and _boxes_disjoint(out):
            return out
        prec *= 2
    raise ArithmeticError(f"root isolation failed for {f}")


def _pellet_radius(f, c, prec: int) -> Fraction | None:
    """Smallest dyadic radius (up to a few doublings) passing Pellet's test on
    the disc circumscribing the box of half-width r around c."""
    q = taylor_shift(f, c)
    sb = 2 * prec + 64
    q0 = sqrt_bounds(_abs2(q[0]), sb)[1]
    q1 = sqrt_bounds(_abs2(q[1]), sb)[0]
    if q[0] == (0, 0):
        if q[1] == (0, 0):
            return None
        if c[1] == 0:
            return Fraction(0)
    if q1 == 0:
        return None
    r = _dyadic_ceil(max(2 * q0 / q1, Fraction(1, 1 << (2 * prec))), prec + 8)
    for _ in range(6):
        disc_r = r if c[1] == 0 else _dyadic_ceil(r * Fraction(1415, 1000), prec + 8)
        if pellet_one_root(f, c, disc_r, sb):
            return r
        r *= 2
    return None


def _boxes_disjoint(discs) -> bool:
    boxes = [(c[0] - r, c[0] + r, c[1] - r, c[1] + r) for c, r, _ in discs]
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            if not (a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]):
                return False
    return True


@lru_cache(maxsize=512)
def _isolate_cached(modulus: tuple, bits: int) -> tuple[ArchimedeanPlace, ...]:
    raw = []
    for factor, mult in P.squarefree_decomposition(modulus):
        for c, r, is_real in _isolate_factor(factor, bits):
            raw.append((c, r, is_real, mult, factor))
    if not _boxes_disjoint([(c, r, real) for c, r, real, _, _ in raw]):
        raise ArithmeticError("boxes of different squarefree factors overlap")
    # real roots by decreasing value, then upper-half roots each followed by
    # its conjugate
    reals = sorted((x for x in raw if x[2]), key=lambda x: -x[0][0])
    uppers = sorted((x for x in raw if not x[2] and x[0][1] > 0),
                    key=lambda x: (-x[0][0], -x[0][1]))
    lowers = {(x[0][0], x[0][1]): x for x in raw if not x[2] and x[0][1] < 0}
    ordered = list(reals)
    for u in uppers:
        ordered.append(u)
        ordered.append(lowers[(u[0][0], -u[0][1])])
    places = []
    for idx, (c, r, is_real, mult, factor) in enumerate(ordered):
        box = (c[0] - r, c[0] + r, c[1] - (0 if is_real else r), c[1] + (0 if is_real else r))
        conj = None
        if not is_real:
            conj = idx + 1 if c[1] > 0 else idx - 1
        places.append(ArchimedeanPlace(tuple(modulus), idx, box, is_real, mult,
                                       tuple(factor), conj))
    return tuple(places)


def isolate_roots(modulus, precision_bits: int = 64) -> list[ArchimedeanPlace]:
    """One certified place per distinct complex root of ``modulus``.

    Every box has width at most ``2^-precision_bits``; boxes are pairwise
    disjoint.  Real roots get boxes with zero imaginary extent.
    """
    modulus = tuple(int(c) for c in P.strip(modulus))
    return list(_isolate_cached(modulus, int(precision_bits)))


def verify_root_box(place: ArchimedeanPlace) -> bool:
    """Re-certify, from the place data alone, that the disc circumscribing
    the box contains exactly one root of a squarefree factor of the
    modulus."""
    factors = [place.factor] if place.factor else []
    factors += [f for f, _ in P.squarefree_decomposition(place.modulus)]
    c, r = place.center, place.radius
    for f in factors:
        if r == 0:
            if P.evaluate(f, c[0]) == 0 and c[1] == 0:
                return True
            continue
        if place.real:
            # a unique root in a disc symmetric about the real axis is real
            if c[1] == 0 and pellet_one_root(f, c, r):
                return True
        elif pellet_one_root(f, c, r):
            return True
    return False


def refine_place(place: ArchimedeanPlace, precision_bits: int) -> ArchimedeanPlace:
    """Same root, box intersected with a freshly isolated tighter box."""
    if place.width <= Fraction(1, 1 << precision_bits):
        return place
    cands = isolate_roots(place.modulus, precision_bits)
    lo_r, hi_r, lo_i, hi_i = place.box
    best = None
    for cand in cands:
        cr, ci = cand.center
        if lo_r <= cr <= hi_r and lo_i <= ci <= hi_i and cand.real == place.real:
            best = cand
            break
    if best is None:
        return place
    b = best.box
    box = (max(lo_r, b[0]), min(hi_r, b[1]), max(lo_i, b[2]), min(hi_i, b[3]))
    return replace(place, box=box)


# -- absolute values at archimedean places --------------------------------


@dataclass(frozen=True)
class AbsEnclosure:
    """``lo <= |sigma(alpha)| <= hi``; ``exhausted`` flags a width target
    that the precision budget could not meet (the bounds remain valid)."""

    lo: Fraction
    hi: Fraction
    exhausted: bool = False

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __mul__(self, other: "AbsEnclosure") -> "AbsEnclosure":
        return AbsEnclosure(self.lo * other.lo, self.hi * other.hi,
                            self.exhausted or other.exhausted)

    def intersect(self, other: "AbsEnclosure") -> "AbsEnclosure":
        return AbsEnclosure(max(self.lo, other.lo), min(self.hi, other.hi),
                            self.exhausted and other.exhausted)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi),
                "lo_decimal": float(self.lo), "hi_decimal": float(self.hi)}


def abs_poly_at(p, place: ArchimedeanPlace, bits: int = 64) -> AbsEnclosure:
    """Enclosure of ``|p(lambda)|`` for the root in ``place``, valid over the
    whole certified disc."""
    p = P.strip(p)
    if len(p) <= 1:
        v = abs(Fraction(p[0])) if p else Fraction(0)
        return AbsEnclosure(v, v)
    c, r = place.center, place.radius
    q = taylor_shift(p, c)
    sb = bits + 16
    lo0, hi0 = sqrt_bounds(_abs2(q[0]), sb)
    err = Fraction(0)
    rk = Fraction(1)
    for k in range(1, len(q)):
        rk *= r
        if rk == 0:
            break
        if q[k] != (0, 0):
            err += sqrt_bounds(_abs2(q[k]), sb)[1] * rk
    return AbsEnclosure(max(Fraction(0), lo0 - err), hi0 + err)


def _check_place_ring(alpha: RingElement, place: ArchimedeanPlace):
    ring = alpha.ring
    if not ring.is_number_ring or tuple(ring.modulus) != tuple(place.modulus):
        raise PlaceRingMismatch(f"place of {place.modulus} used for {ring!r}")


def abs_arch(alpha: RingElement, place: ArchimedeanPlace, precision_bits: int = 64,
             max_bits: int = 4096) -> AbsEnclosure:
    """Certified enclosure of ``|sigma(alpha)|`` with width at most
    ``2^-precision_bits`` (or flagged ``exhausted`` once ``max_bits`` is hit)."""
    _check_place_ring(alpha, place)
    target = Fraction(1, 1 << precision_bits)
    lift = alpha.lift()
    bits = precision_bits
    enc = abs_poly_at(lift, place, bits)
    while enc.width > target:
        bits *= 2
        if bits > max_bits:
            return replace(enc, exhausted=True)
        place = refine_place(place, bits)
        enc = enc.intersect(abs_poly_at(lift, place, bits + 16))
    return enc


def norm_enclosure(alpha: RingElement, precision_bits: int = 64) -> AbsEnclosure:
    """Product of ``|sigma(alpha)|`` over all roots of the modulus, with
    multiplicity.  Must contain ``|N(alpha)| = |charpoly(alpha)(0)|``."""
    out = AbsEnclosure(Fraction(1), Fraction(1))
    for place in isolate_roots(alpha.ring.modulus, precision_bits):
        enc = abs_arch(alpha, place, precision_bits)
        for _ in range(place.multiplicity):
            out = out * enc
    return out


# -- non-archimedean valuations -------------------------------------------


def vp(q, p: int) -> int | None:
    """p-adic valuation of a rational (None for zero)."""
    q = Fraction(q)
    if q == 0:
        return None
    v = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def newton_polygon(points: list[tuple[int, int]]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Lower convex hull segments of the given (abscissa, ordinate) points."""
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return list(zip(hull, hull[1:]))


def polygon_valuations(coeffs, p: int) -> list[Fraction]:
    """Root valuations (with multiplicity) of a polynomial with nonzero
    constant term, as negated Newton-polygon slopes."""
    pts = [(i, vp(c, p)) for i, c in enumerate(coeffs) if c != 0]
    out: list[Fraction] = []
    for (x1, y1), (x2, y2) in newton_polygon(pts):
        slope = Fraction(y2 - y1, x2 - x1)
        out.extend([-slope] * (x2 - x1))
    return sorted(out)


def newton_polygon_valuations(alpha: RingElement, p: int) -> list[Fraction]:
    """Valuations at places above ``p`` of the d conjugates of ``alpha``."""
    alpha.ring.require_field()
    return polygon_valuations(alpha.charpoly(), p)


def factor_small(n: int, bound: int) -> tuple[list[int], int]:
    """Trial division up to ``bound``: returns the primes found and the
    unfactored cofactor (1 when complete; a prime when it is below bound^2)."""
    n = abs(n)
    primes = []
    q = 2
    while q * q <= n and q <= bound:
        if n % q == 0:
            primes.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1 and (n <= bound * bound or q * q > n):
        primes.append(n)
        n = 1
    return primes, n


def candidate_primes(coeffs, bound: int = 10**6) -> tuple[list[int], int]:
    """Primes that can carry a nonzero valuation of a root of the given
    monic rational polynomial: those dividing the constant term or any
    denominator."""
    primes: set[int] = set()
    leftover = 1
    nums = [Fraction(coeffs[0]).numerator] + [Fraction(c).denominator for c in coeffs]
    for n in nums:
        if abs(n) <= 1:
            continue
        found, rest = factor_small(n, bound)
        primes.update(found)
        leftover *= rest
    return sorted(primes), leftover


def tadic_order(alpha: RingElement, center: Fraction | None) -> int | None:
    """Order of vanishing of a rational function at ``t = center``."""
    num, den = alpha.numerator, alpha.denominator
    if not num:
        return None
    if center is None:
        return (len(den) - 1) - (len(num) - 1)

    def order(p):
        k = 0
        lin = (-Fraction(center), Fraction(1))
        while True:
            quo, r = P.divmod_poly(p, lin)
            if r:
                return k
            p, k = quo, k + 1

    return order(num) - order(den)


def rational_roots(p) -> list[Fraction]:
    """Rational roots of a rational polynomial (rational root theorem)."""
    _, prim = P.content_primitive(p)
    roots = []
    k = 0
    while prim and prim[0] == 0:
        prim = prim[1:]
        k += 1
    if k:
        roots.append(Fraction(0))
    if len(prim) <= 1:
        return roots

    def divisors(n):
        n = abs(n)
        out = set()
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.update((i, n // i))
            i += 1
        return out

    if abs(prim[0]) > 10**12 or abs(prim[-1]) > 10**12:
        return roots
    for a in divisors(prim[0]):
        for b in divisors(prim[-1]):
            for s in (1, -1):
                r = Fraction(s * a, b)
                if r not in roots and P.evaluate(prim, r) == 0:
                    roots.append(r)
    return sorted(roots)


def tadic_candidates(alpha: RingElement) -> list[TAdicPlace]:
    """t-adic places where ``alpha`` has positive order: rational zeros of its
    numerator, then infinity."""
    out = [TAdicPlace(c) for c in rational_roots(alpha.numerator)]
    if len(alpha.numerator) < len(alpha.denominator):
        out.append(TAdicPlace(None))
    return [pl for pl in out if (tadic_order(alpha, pl.center) or 0) > 0]


# -- contracting places ---------------------------------------------------


class SearchMode(str, enum.Enum):
    STRICT_NONARCH = "strict_nonarch"
    ARCH_THIRD = "arch_third"


def find_contracting_place(alpha: RingElement, mode="strict_nonarch",
                           precision_bits: int = 64,
                           trial_division_bound: int = 10**6) -> Place | None:
    """A place where ``alpha`` contracts: positive valuation (strict_nonarch)
    or a certified archimedean absolute value <= 1/3 (arch_third)."""
    mode = SearchMode(mode)
    ring = alpha.ring
    if alpha.is_zero:
        raise PreconditionError("alpha must be nonzero")
    if mode is SearchMode.ARCH_THIRD:
        if not ring.is_number_ring:
            return None
        for place in isolate_roots(ring.modulus, precision_bits):
            if abs_arch(alpha, place, precision_bits).hi <= THIRD:
                return place
        return None
    if not ring.is_number_ring:
        cands = tadic_candidates(alpha)
        return cands[0] if cands else None
    ring.require_field()
    cp = alpha.charpoly()
    primes, leftover = candidate_primes(cp, trial_division_bound)
    for p in primes:
        vals = polygon_valuations(cp, p)
        if vals[-1] > 0:
            return PAdicPlace(p, vals[-1])
    if leftover > 1:
        raise NormFactorizationBudget(
            f"cofactor {leftover} exceeds trial division bound {trial_division_bound}")
    return None


def power_bound_le_third(enc: AbsEnclosure, n: int, sign: int) -> bool | None:
    """Is ``|sigma(alpha)|^(sign*n) <= 1/3``?  True/False when the enclosure
    decides it, None when it straddles the threshold."""
    if sign > 0:
        if enc.hi ** n <= THIRD:
            return True
        if enc.lo ** n > THIRD:
            return False
        return None
    if enc.lo > 0 and enc.lo ** n >= 3:
        return True
    if enc.hi ** n < 3:
        return False
    return None


@dataclass(frozen=True)
class ContractionExponent:
    n0: int
    place: ArchimedeanPlace
    sign: int
    enclosure: AbsEnclosure


def contraction_exponent(alpha: RingElement, n_max: int = 64,
                         precision_bits: int = 64,
                         max_bits: int = 1024) -> ContractionExponent:
    """Smallest ``n0 <= n_max`` and sign with ``|sigma(alpha)^(sign*n0)| <= 1/3``
    certified at some archimedean place (places in index order, sign +1
    before -1)."""
    ring = alpha.ring
    if not ring.is_number_ring:
        raise PreconditionError("contraction exponent needs a number ring")
    if ring.is_field and alpha.root_of_unity_order() is not None:
        raise PreconditionError(f"{alpha} is a root of unity")
    places = isolate_roots(ring.modulus, precision_bits)
    encs = {pl.index: abs_arch(alpha, pl, precision_bits) for pl in places}
    for n in range(1, n_max + 1):
        for pl in places:
            for sign in (1, -1):
                bits = precision_bits
                verdict = power_bound_le_third(encs[pl.index], n, sign)
                while verdict is None and bits < max_bits:
                    bits *= 2
                    encs[pl.index] = encs[pl.index].intersect(abs_arch(alpha, pl, bits))
                    verdict = power_bound_le_third(encs[pl.index], n, sign)
                if verdict:
                    enc = encs[pl.index]
                    return ContractionExponent(n, pl, sign, enc)
    raise NotFoundWithinBound(f"no contraction exponent <= {n_max} for {alpha}")


def requires_field_or_none(alpha: RingElement) -> bool:
    try:
        alpha.ring.require_field()
        return True
    except RequiresField:
        return False
