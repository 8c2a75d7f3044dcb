"""The affine group of the line over a coefficient ring: maps z -> a*z + b.

Composition convention: ``f * g`` is ``f o g`` (apply ``g`` first), and a word
``l1 l2 ... lk`` evaluates to ``l1 o l2 o ... o lk`` so its leftmost letter is
applied last.  With this reading ``A^4 = B^2 A B`` holds for A = (x, 0),
B = (x, 1) exactly when x^3 + x + 1 = 0.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    EqualFixedPoints,
    IndexOutOfRange,
    MixedParents,
    NotTwoHomotheties,
    ParseError,
    ZeroDivisor,
)
from .field import ModulusRing, RingElement


class AffineMap:
    """z -> a*z + b with ``a`` invertible."""

    __slots__ = ("a", "b", "_hash")

    def __init__(self, a: RingElement, b: RingElement, *, _checked: bool = True):
        if a.ring is not b.ring and a.ring != b.ring:
            raise MixedParents("ratio and translation live in different rings")
        if _checked:
            a.inv()
        self.a = a
        self.b = b
        self._hash = hash((a.data, b.data))

    @classmethod
    def identity(cls, ring: ModulusRing) -> "AffineMap":
        return cls(ring.one, ring.zero, _checked=False)

    @classmethod
    def from_values(cls, ring: ModulusRing, a, b) -> "AffineMap":
        return cls(ring(a), ring(b))

    @property
    def ring(self) -> ModulusRing:
        return self.a.ring

    @property
    def ratio(self) -> RingElement:
        return self.a

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AffineMap({self.a}, {self.b})"

    def __call__(self, z: RingElement) -> RingElement:
        return self.a * z + self.b

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        if not isinstance(other, AffineMap):
            return NotImplemented
        return AffineMap(self.a * other.a, self.a * other.b + self.b, _checked=False)

    def inverse(self) -> "AffineMap":
        ai = self.a.inv()
        return AffineMap(ai, -(ai * self.b), _checked=False)

    def __invert__(self) -> "AffineMap":
        return self.inverse()

    def __pow__(self, k: int) -> "AffineMap":
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = AffineMap.identity(self.ring)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    @property
    def is_identity(self) -> bool:
        return self.a.is_one and self.b.is_zero

    @property
    def is_translation(self) -> bool:
        return self.a.is_one and not self.b.is_zero

    @property
    def is_homothety(self) -> bool:
        return not self.a.is_one

    def fixed_point(self) -> RingElement:
        """``b / (1 - a)``; raises ZeroDivisor if ``1 - a`` is not invertible."""
        if self.a.is_one:
            raise NotTwoHomotheties("translations and the identity have no unique fixed point")
        return self.b * (self.ring.one - self.a).inv()

    def classify(self) -> "MapClass":
        return classify_map(self)

    def conjugate(self, w: "AffineMap") -> "AffineMap":
        """``w o self o w^{-1}``."""
        return w * self * w.inverse()

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, ring: ModulusRing, obj: dict) -> "AffineMap":
        return cls(ring.element_from_json(obj["a"]), ring.element_from_json(obj["b"]))


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    if f.ring is not g.ring and f.ring != g.ring:
        raise MixedParents("maps over different rings")
    return f * g


def invert(f: AffineMap) -> AffineMap:
    return f.inverse()


def map_pow(f: AffineMap, k: int) -> AffineMap:
    return f ** k


def conjugate(f: AffineMap, w: AffineMap) -> AffineMap:
    return f.conjugate(w)


class MapTag(str, enum.Enum):
    IDENTITY = "identity"
    TRANSLATION = "translation"
    HOMOTHETY = "homothety"


@dataclass(frozen=True)
class MapClass:
    tag: MapTag
    fixed_point: RingElement | None = None


def classify_map(f: AffineMap) -> MapClass:
    if f.a.is_one:
        return MapClass(MapTag.IDENTITY if f.b.is_zero else MapTag.TRANSLATION)
    try:
        p = f.fixed_point()
    except ZeroDivisor as exc:
        raise ZeroDivisor(f"cannot classify {f!r}: 1 - a is a zero divisor") from exc
    return MapClass(MapTag.HOMOTHETY, p)


# -- words ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Word:
    """A word over generator indices; each letter is ``(index, +1 | -1)``."""

    letters: tuple[tuple[int, int], ...] = ()

    @classmethod
    def positive(cls, indices: Sequence[int]) -> "Word":
        return cls(tuple((i, 1) for i in indices))

    @property
    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k >= 0:
            return Word(self.letters * k)
        return self.inverse() ** (-k)

    def inverse(self) -> "Word":
        return Word(tuple((i, -e) for i, e in reversed(self.letters)))

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Replace each letter by a word (inverse letters by its inverse)."""
        out: tuple = ()
        for i, e in self.letters:
            w = images[i] if e == 1 else images[i].inverse()
            out += w.letters
        return Word(out)

    def count(self, index: int) -> int:
        return sum(1 for i, _ in self.letters if i == index)

    def render(self, names: Sequence[str] = ("a", "b")) -> str:
        parts = []
        for i, e in self.letters:
            parts.append(names[i] if e == 1 else f"{names[i]}^-1")
        return " ".join(parts)

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str, names: Sequence[str] = ("a", "b")) -> "Word":
        """Parse ``"b a b a a b"``, ``"aaaa"``, ``"A^-3"`` or ``"B*A^-3*B^-1"``."""
        order = sorted(range(len(names)), key=lambda i: -len(names[i]))
        pattern = re.compile(
            r"\s*(" + "|".join(re.escape(names[i]) for i in order) + r")"
            r"(?:\^\(?([-+]?\d+)\)?)?\s*\*?")
        letters: list[tuple[int, int]] = []
        pos = 0
        text = text.strip()
        if text in ("", "e", "1"):
            return cls(())
        while pos < len(text):
            m = pattern.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse word {text!r} at {pos}")
            idx = list(names).index(m.group(1))
            k = int(m.group(2)) if m.group(2) else 1
            letters.extend([(idx, 1 if k > 0 else -1)] * abs(k))
            pos = m.end()
        return cls(tuple(letters))


def eval_word(word: Word, generators: Sequence[AffineMap]) -> AffineMap:
    if not generators:
        raise IndexOutOfRange("no generators")
    inverses: dict[int, AffineMap] = {}
    result = AffineMap.identity(generators[0].ring)
    for i, e in word.letters:
        if not 0 <= i < len(generators):
            raise IndexOutOfRange(f"letter {i} with {len(generators)} generators")
        if e == 1:
            g = generators[i]
        else:
            g = inverses.get(i)
            if g is None:
                g = inverses[i] = generators[i].inverse()
        result = result * g
    return result


# -- normal forms and group structure -------------------------------------

def canonical_conjugator(f: AffineMap, g: AffineMap) -> AffineMap:
    """The affine map sending fix(f) to 0 and fix(g) to 1."""
    if not (f.is_homothety and g.is_homothety):
        raise NotTwoHomotheties("both maps must be homotheties")
    p, q = f.fixed_point(), g.fixed_point()
    if p == q:
        raise EqualFixedPoints(f"both maps fix {p}")
    s = (q - p).inv()
    return AffineMap(s, -(p * s), _checked=False)


def canonical_pair(f: AffineMap, g: AffineMap) -> tuple[AffineMap, AffineMap]:
    """Conjugate the pair so the fixed points become 0 and 1; ratios are kept."""
    gamma = canonical_conjugator(f, g)
    return f.conjugate(gamma), g.conjugate(gamma)


class GroupClass(str, enum.Enum):
    VIRTUALLY_NILPOTENT = "virtually_nilpotent"
    POLYCYCLIC_NOT_VN = "polycyclic_not_vn"
    NOT_POLYCYCLIC = "not_polycyclic"
    UNKNOWN = "unknown"


def classify_group(generators: Sequence[AffineMap]) -> GroupClass:
    """Structure of the generated subgroup, read off the generator ratios.

    Polycyclic iff every ratio is an algebraic unit; virtually nilpotent iff
    every ratio is a root of unity.  Over Q(t) only constant ratios can be
    classified; anything else is UNKNOWN.
    """
    if not generators:
        return GroupClass.VIRTUALLY_NILPOTENT
    ring = generators[0].ring
    if not ring.is_number_ring:
        values = [g.a.constant_value() for g in generators]
        if any(v is None for v in values):
            return GroupClass.UNKNOWN
        if all(abs(v) == 1 for v in values):
            return GroupClass.VIRTUALLY_NILPOTENT
        return GroupClass.NOT_POLYCYCLIC
    ring.require_field()
    ratios = [g.a for g in generators]
    if not all(r.is_unit() for r in ratios):
        return GroupClass.NOT_POLYCYCLIC
    if all(r.root_of_unity_order() is not None for r in ratios):
        return GroupClass.VIRTUALLY_NILPOTENT
    return GroupClass.POLYCYCLIC_NOT_VN


# -- generator set text format -------------------------------------------

def gamma_generators(ring: ModulusRing) -> tuple[AffineMap, AffineMap]:
    """A(x) = (x, 0) and B(x) = (x, 1) for the generator x of the ring."""
    x = ring.gen
    return AffineMap(x, ring.zero), AffineMap(x, ring.one)


def parse_generators(text: str, ring: ModulusRing) -> tuple[list[str], list[AffineMap]]:
    """Parse ``"gamma"`` / ``"gamma(pi)"`` or ``"[name=]a|b; [name=]a|b; ..."``.

    Unnamed generators are called A, B, C, ...
    """
    text = text.strip()
    if text.startswith("gamma"):
        return ["A", "B"], list(gamma_generators(ring))
    names, maps = [], []
    for k, chunk in enumerate(p for p in text.split(";") if p.strip()):
        name = chr(ord("A") + k)
        if "=" in chunk:
            name, chunk = (s.strip() for s in chunk.split("=", 1))
        if "|" not in chunk:
            raise ParseError(f"generator {chunk!r} is not of the form a|b")
        a_txt, b_txt = chunk.split("|", 1)
        names.append(name)
        maps.append(AffineMap(ring.parse_element(a_txt), ring.parse_element(b_txt)))
    if not maps:
        raise ParseError("empty generator set")
    return names, maps
