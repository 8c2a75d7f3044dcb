"""Exact coefficient rings: Q[X]/(pi) for monic integer pi, and Q(t).

Elements are immutable and always stored in a canonical form, so ``==`` and
``hash`` are structural.  This is what lets the ball enumeration deduplicate
group elements by plain dictionary lookups.

* Number ring elements are ``(nums, den)``: ``d`` integers and a positive
  common denominator with ``gcd(nums..., den) == 1``.
* Function field elements are ``(num, den)`` rational polynomials in lowest
  terms with ``den`` monic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable

from . import poly as P
from .errors import (
    EmptyModulus,
    FunctionFieldUnsupported,
    MixedParents,
    NonMonic,
    ParseError,
    RequiresField,
    ZeroDivisor,
    ZeroInput,
)
from .parse import parse_expression, parse_integer_poly


class RingKind(str, enum.Enum):
    NUMBER = "number"
    FUNCTION_FIELD = "function_field"


class Irreducible(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def _integer_roots(coeffs: tuple[int, ...], limit: int = 10**12) -> list[int] | None:
    """Integer roots of a monic integer polynomial, or None if ``|c0|`` is too
    large to enumerate divisors cheaply."""
    c0 = coeffs[0]
    if c0 == 0:
        return [0]
    n = abs(c0)
    if n > limit:
        return None
    divisors = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            divisors.update((i, n // i))
        i += 1
    return sorted(r for d in divisors for r in (d, -d) if P.evaluate(coeffs, r) == 0)


def _irreducibility(coeffs: tuple[int, ...]) -> Irreducible:
    d = len(coeffs) - 1
    if d == 1:
        return Irreducible.YES
    roots = _integer_roots(coeffs)
    if roots is None:
        return Irreducible.UNKNOWN
    if roots:
        return Irreducible.NO
    # a reducible cubic or quadratic always has a linear factor
    return Irreducible.YES if d <= 3 else Irreducible.UNKNOWN


@dataclass(frozen=True)
class ModulusRing:
    """Either Q[X]/(modulus) or the rational function field Q(t).

    ``irreducible`` records what is known about the modulus; predicates that
    need a field (integrality, units, roots of unity) refuse to run unless it
    is ``Irreducible.YES``.
    """

    kind: RingKind
    modulus: tuple[int, ...] = ()
    irreducible: Irreducible = field(default=Irreducible.UNKNOWN, compare=False)

    def __post_init__(self):
        if self.kind is RingKind.NUMBER:
            if not self.modulus:
                raise EmptyModulus("empty modulus")
            if len(self.modulus) < 2:
                raise EmptyModulus("modulus must have degree >= 1")
            if self.modulus[-1] != 1:
                raise NonMonic(f"modulus {self.modulus} is not monic")

    # -- construction -----------------------------------------------------

    @classmethod
    def number_ring(cls, modulus, irreducible=None) -> "ModulusRing":
        """Build Q[X]/(modulus) from a coefficient list or polynomial text.

        ``irreducible=True`` asserts irreducibility; otherwise a cheap rational
        root test decides degrees 1..3 and leaves the rest unknown.
        """
        if isinstance(modulus, str):
            coeffs = parse_integer_poly(modulus)
        else:
            coeffs = list(modulus)
            if any(Fraction(c).denominator != 1 for c in coeffs):
                raise NonMonic("modulus coefficients must be integers")
            coeffs = tuple(int(c) for c in P.strip(coeffs))
        if not coeffs:
            raise EmptyModulus("empty modulus")
        if len(coeffs) == 1:
            raise EmptyModulus("modulus must have degree >= 1")
        if coeffs[-1] != 1:
            raise NonMonic(f"modulus {coeffs} is not monic")
        if irreducible is True:
            hint = Irreducible.YES
        elif irreducible is False:
            hint = Irreducible.NO
        else:
            hint = _irreducibility(coeffs)
        return cls(RingKind.NUMBER, coeffs, hint)

    @classmethod
    def function_field(cls) -> "ModulusRing":
        return cls(RingKind.FUNCTION_FIELD, (), Irreducible.YES)

    @classmethod
    def parse(cls, text: str, irreducible=None) -> "ModulusRing":
        """``"t"`` (or ``"Q(t)"``) selects the function field, anything else
        is read as a modulus."""
        if text.strip() in ("t", "Q(t)", "QQ(t)"):
            return cls.function_field()
        return cls.number_ring(text, irreducible)

    # -- basic properties -------------------------------------------------

    @property
    def is_number_ring(self) -> bool:
        return self.kind is RingKind.NUMBER

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1 if self.is_number_ring else 0

    @property
    def is_field(self) -> bool:
        return self.irreducible is Irreducible.YES

    @property
    def var(self) -> str:
        return "x" if self.is_number_ring else "t"

    def __repr__(self):
        if self.is_number_ring:
            return f"Q[x]/({P.format_poly(self.modulus)})"
        return "Q(t)"

    def require_field(self):
        if not self.is_number_ring:
            raise FunctionFieldUnsupported("number ring required")
        if not self.is_field:
            raise RequiresField(f"{self!r} is not known to be a field")

    # -- elements -----------------------------------------------------------

    def _make(self, data) -> "RingElement":
        return RingElement(self, data)

    def from_poly(self, p: Iterable) -> "RingElement":
        """Element represented by the polynomial ``p`` (ascending)."""
        p = P.strip(list(p))
        if self.is_number_ring:
            return self._make(self._nr_normalize(p))
        return self._make(self._ff_normalize(p, (Fraction(1),)))

    def from_fraction(self, num, den) -> "RingElement":
        """Function-field element ``num/den`` from two polynomials."""
        if self.is_number_ring:
            return self.from_poly(num) * self.from_poly(den).inv()
        if not P.strip(den):
            raise ZeroInput("zero denominator")
        return self._make(self._ff_normalize(P.strip(num), P.strip(den)))

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise MixedParents(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, str):
            return self.parse_element(value)
        return self.from_poly((Fraction(value),))

    @cached_property
    def zero(self) -> "RingElement":
        return self.from_poly(())

    @cached_property
    def one(self) -> "RingElement":
        return self.from_poly((1,))

    @cached_property
    def gen(self) -> "RingElement":
        """The class of X (number ring) or t (function field)."""
        return self.from_poly((0, 1))

    def parse_element(self, text: str) -> "RingElement":
        return parse_expression(text, _RingAlgebra(self))

    # -- number ring arithmetic on raw data -------------------------------

    def _nr_normalize(self, coeffs) -> tuple:
        d = self.degree
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > d:
            fr = list(P.rem(fr, self.modulus))
        fr += [Fraction(0)] * (d - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return tuple(int(c * den) for c in fr), den

    @staticmethod
    def _reduce_den(nums, den):
        if den == 1:
            return tuple(nums), 1
        g = gcd(den, *nums)
        if g == 1:
            return tuple(nums), den
        return tuple(c // g for c in nums), den // g

    def _nr_add(self, x, y):
        (n1, d1), (n2, d2) = x, y
        if d1 == d2:
            return self._reduce_den([a + b for a, b in zip(n1, n2)], d1)
        return self._reduce_den([a * d2 + b * d1 for a, b in zip(n1, n2)], d1 * d2)

    def _nr_neg(self, x):
        n, d = x
        return tuple(-c for c in n), d

    def _nr_mul(self, x, y):
        (n1, d1), (n2, d2) = x, y
        d = self.degree
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(n1):
            if a:
                for j, b in enumerate(n2):
                    if b:
                        conv[i + j] += a * b
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = conv[k]
            if c:
                base = k - d
                for i in range(d):
                    if mod[i]:
                        conv[base + i] -= c * mod[i]
        return self._reduce_den(conv[:d], d1 * d2)

    def _nr_inv(self, x):
        nums, den = x
        lift = P.strip(nums)
        if not lift:
            raise ZeroInput("inverse of zero")
        g, s, _ = P.xgcd(lift, self.modulus)
        if len(g) > 1:
            raise ZeroDivisor(
                f"{P.format_poly(lift)} shares the factor {P.format_poly(g)} "
                f"with the modulus {P.format_poly(self.modulus)}"
            )
        return self._nr_normalize(P.scale(s, den))

    # -- function field arithmetic on raw data ----------------------------

    @staticmethod
    def _ff_normalize(num, den):
        if not den:
            raise ZeroInput("zero denominator")
        if not num:
            return (), (Fraction(1),)
        g = P.gcd_poly(num, den)
        if len(g) > 1:
            num = P.exact_div(num, g)
            den = P.exact_div(den, g)
        lead = Fraction(den[-1])
        num = tuple(Fraction(c) / lead for c in num)
        den = tuple(Fraction(c) / lead for c in den)
        return num, den

    def _ff_add(self, x, y):
        (a, b), (c, d) = x, y
        if b == d:
            return self._ff_normalize(P.add(a, c), b)
        return self._ff_normalize(P.add(P.mul(a, d), P.mul(c, b)), P.mul(b, d))

    def _ff_mul(self, x, y):
        (a, b), (c, d) = x, y
        return self._ff_normalize(P.mul(a, c), P.mul(b, d))

    def _ff_inv(self, x):
        num, den = x
        if not num:
            raise ZeroInput("inverse of zero")
        return self._ff_normalize(den, num)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        if self.is_number_ring:
            return {"kind": "number", "modulus": list(self.modulus),
                    "irreducible": self.irreducible.value}
        return {"kind": "function_field"}

    @classmethod
    def from_json(cls, obj: dict) -> "ModulusRing":
        if obj["kind"] == "function_field":
            return cls.function_field()
        hint = Irreducible(obj.get("irreducible", "unknown"))
        ring = cls.number_ring(obj["modulus"])
        if hint is Irreducible.YES:
            ring = cls(RingKind.NUMBER, ring.modulus, hint)
        return ring

    def element_from_json(self, obj) -> "RingElement":
        if self.is_number_ring:
            return self.from_poly([Fraction(c) for c in obj])
        return self.from_fraction([Fraction(c) for c in obj["num"]],
                                  [Fraction(c) for c in obj["den"]])


def ring_new(kind, modulus_coeffs=(), irreducible=None) -> ModulusRing:
    kind = RingKind(kind)
    if kind is RingKind.FUNCTION_FIELD:
        return ModulusRing.function_field()
    return ModulusRing.number_ring(modulus_coeffs, irreducible)


class _RingAlgebra:
    def __init__(self, ring: ModulusRing):
        self.ring = ring

    def const(self, c):
        return self.ring(c)

    def var(self, name):
        if name not in (self.ring.var, self.ring.var.upper()):
            raise ParseError(f"unknown symbol {name!r} in {self.ring!r}")
        return self.ring.gen

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def pow(self, a, k):
        return a ** k


class RingElement:
    """An immutable element of a :class:`ModulusRing`."""

    __slots__ = ("ring", "data", "_hash")

    def __init__(self, ring: ModulusRing, data):
        self.ring = ring
        self.data = data
        self._hash = hash(data)

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedParents(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.data == other.data and (
                other.ring is self.ring or other.ring == self.ring)
        if isinstance(other, (int, Fraction)):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.ring.is_number_ring:
            return RingElement(self.ring, self.ring._nr_add(self.data, other.data))
        return RingElement(self.ring, self.ring._ff_add(self.data, other.data))

    __radd__ = __add__

    def __neg__(self):
        if self.ring.is_number_ring:
            return RingElement(self.ring, self.ring._nr_neg(self.data))
        num, den = self.data
        return RingElement(self.ring, (P.neg(num), den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.ring.is_number_ring:
            return RingElement(self.ring, self.ring._nr_mul(self.data, other.data))
        return RingElement(self.ring, self.ring._ff_mul(self.data, other.data))

    __rmul__ = __mul__

    def inv(self) -> "RingElement":
        """Multiplicative inverse; raises ZeroDivisor in a reducible quotient
        when the element is not a unit of the ring."""
        if self.ring.is_number_ring:
            return RingElement(self.ring, self.ring._nr_inv(self.data))
        return RingElement(self.ring, self.ring._ff_inv(self.data))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int) -> "RingElement":
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inv(), -k
        result = self.ring.one
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- views ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self == self.ring.zero

    @property
    def is_one(self) -> bool:
        return self == self.ring.one

    def lift(self) -> P.Poly:
        """Canonical representative polynomial (number ring only)."""
        if not self.ring.is_number_ring:
            raise FunctionFieldUnsupported("lift is defined for number rings")
        nums, den = self.data
        return P.strip([Fraction(c, den) for c in nums])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        nums, den = self.data
        return tuple(Fraction(c, den) for c in nums)

    @property
    def numerator(self) -> P.Poly:
        return self.data[0]

    @property
    def denominator(self) -> P.Poly:
        return self.data[1]

    def constant_value(self) -> Fraction | None:
        """The rational value if the element is a constant, else None."""
        if self.ring.is_number_ring:
            lift = self.lift()
            if len(lift) <= 1:
                return Fraction(lift[0]) if lift else Fraction(0)
            return None
        num, den = self.data
        if len(num) <= 1 and len(den) == 1:
            return Fraction(num[0]) if num else Fraction(0)
        return None

    def __repr__(self):
        return str(self)

    def __str__(self):
        if self.ring.is_number_ring:
            return P.format_poly(self.lift(), "x")
        num, den = self.data
        if len(den) == 1:
            return P.format_poly(num, "t")
        return f"({P.format_poly(num, 't')})/({P.format_poly(den, 't')})"

    def to_json(self):
        if self.ring.is_number_ring:
            return [str(c) for c in self.coeffs]
        num, den = self.data
        return {"num": [str(Fraction(c)) for c in num],
                "den": [str(Fraction(c)) for c in den]}

    # -- algebraic predicates -----------------------------------------------

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix of ``y -> self*y`` on the basis 1, X, ..., X^{d-1}
        (column j holds ``self * X^j``)."""
        ring = self.ring
        if not ring.is_number_ring:
            raise FunctionFieldUnsupported("charpoly needs a number ring")
        d = ring.degree
        cols = []
        v = self
        for _ in range(d):
            cols.append(v.coeffs)
            v = v * ring.gen
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def charpoly(self) -> tuple[Fraction, ...]:
        """Characteristic polynomial of multiplication by this element;
        monic of degree d, ascending coefficients."""
        return hessenberg_charpoly(self.multiplication_matrix())

    def is_algebraic_integer(self) -> bool:
        self.ring.require_field()
        return P.is_integral(self.charpoly())

    def is_unit(self) -> bool:
        self.ring.require_field()
        cp = self.charpoly()
        return P.is_integral(cp) and abs(cp[0]) == 1

    def root_of_unity_order(self) -> int | None:
        """Smallest k <= max(2d^2, 36) with self^k == 1, else None."""
        self.ring.require_field()
        bound = root_of_unity_bound(self.ring.degree)
        if self.is_zero:
            return None
        v = self
        for k in range(1, bound + 1):
            if v.is_one:
                return k
            v = v * self
        return None


def root_of_unity_bound(d: int) -> int:
    return max(2 * d * d, 36)


def hessenberg_charpoly(matrix) -> tuple[Fraction, ...]:
    """Characteristic polynomial det(X*I - M) via reduction to upper
    Hessenberg form followed by the standard recurrence."""
    n = len(matrix)
    H = [[Fraction(c) for c in row] for row in matrix]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        t = H[m][m - 1]
        for i in range(m + 1, n):
            u = H[i][m - 1] / t
            if u == 0:
                continue
            row_i, row_m = H[i], H[m]
            for j in range(n):
                row_i[j] -= u * row_m[j]
            for row in H:
                row[m] += u * row[i]
    polys: list[P.Poly] = [(Fraction(1),)]
    for m in range(1, n + 1):
        pm = P.mul((-H[m - 1][m - 1], Fraction(1)), polys[m - 1])
        t = Fraction(1)
        for i in range(1, m):
            t *= H[m - i][m - i - 1]
            if t == 0:
                break
            pm = P.sub(pm, P.scale(polys[m - i - 1], t * H[m - i - 1][m - 1]))
        polys.append(pm)
    out = list(polys[n])
    out += [Fraction(0)] * (n + 1 - len(out))
    return tuple(out)


# Functional spellings of the operations above.

def arith(op: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    if op == "add":
        return a + a._coerce(b)
    if op == "sub":
        return a - a._coerce(b)
    if op == "mul":
        return a * a._coerce(b)
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def inv(a: RingElement) -> RingElement:
    return a.inv()


def power(a: RingElement, k: int) -> RingElement:
    return a ** k


def charpoly(a: RingElement) -> tuple[Fraction, ...]:
    return a.charpoly()


def is_algebraic_integer(a: RingElement) -> bool:
    return a.is_algebraic_integer()


def is_unit(a: RingElement) -> bool:
    return a.is_unit()


def is_root_of_unity(a: RingElement) -> int | None:
    return a.root_of_unity_order()
