"""Dense univariate polynomials over Q as ascending coefficient tuples.

The zero polynomial is the empty tuple.  Every function returns stripped
tuples (no trailing zeros) so that tuples can be compared and hashed
directly.  Coefficients are ``int`` or ``Fraction``; results are
``Fraction`` whenever a division occurred.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Poly = tuple


def strip(p: Sequence) -> Poly:
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


def degree(p: Poly) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(p) - 1


def is_monic(p: Poly) -> bool:
    return bool(p) and p[-1] == 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return strip(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    if c == 0:
        return ()
    return tuple(c * a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return strip(out)


def shift(p: Poly, k: int) -> Poly:
    """Multiply by X^k."""
    if not p:
        return ()
    return (0,) * k + tuple(p)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    rem = [Fraction(c) for c in p]
    dq = len(q) - 1
    if len(rem) <= dq:
        return (), strip(rem)
    quo = [Fraction(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c / lead
        quo[k - dq] = c
        for i in range(dq + 1):
            rem[k - dq + i] -= c * q[i]
    return strip(quo), strip(rem[:dq])


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, r = divmod_poly(p, q)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return quo


def monic(p: Poly) -> Poly:
    if not p:
        return ()
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    a, b = strip(p), strip(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = strip(p), strip(q)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        quo, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return (), s0, t0
    lead = Fraction(r0[-1])
    return monic(r0), scale(s0, 1 / lead), scale(t0, 1 / lead)


def derivative(p: Poly) -> Poly:
    return strip([i * c for i, c in enumerate(p)][1:])


def evaluate(p: Poly, z):
    """Horner evaluation; works for any numeric type supporting + and *."""
    acc = 0
    for c in reversed(p):
        acc = acc * z + c
    return acc


def squarefree_part(p: Poly) -> Poly:
    """Monic squarefree part ``p / gcd(p, p')``."""
    p = strip(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd_poly(p, derivative(p))
    return monic(exact_div(p, g))


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic ``p`` as a product of ``f_k ** k``.

    Returns the nonconstant monic factors with their multiplicities.
    """
    p = monic(strip(p))
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd_poly(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    k = 1
    while len(b) > 1:
        a = gcd_poly(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        k += 1
    return out


def content_primitive(p: Poly) -> tuple[Fraction, tuple[int, ...]]:
    """Split a rational polynomial into ``content * primitive`` with an
    integer primitive part whose leading coefficient is positive."""
    p = strip(p)
    if not p:
        return Fraction(0), ()
    fr = [Fraction(c) for c in p]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(c // g for c in ints)


def is_integral(p: Poly) -> bool:
    return all(Fraction(c).denominator == 1 for c in p)


def x_power_mod(k: int, modulus: Poly) -> Poly:
    """X^k reduced modulo ``modulus`` (k >= 0) by repeated squaring."""
    result: Poly = (1,)
    base: Poly = rem((0, 1), modulus)
    while k:
        if k & 1:
            result = rem(mul(result, base), modulus)
        base = rem(mul(base, base), modulus)
        k >>= 1
    return result


def format_poly(p: Poly, var: str = "x") -> str:
    """Human form, highest degree first, e.g. ``x^3+x+1``."""
    p = strip(p)
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = Fraction(p[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += sign + body
    return text
