"""Exact text formats: polynomial expressions, coefficient lists, words.

Expressions use ``+ - * / ^`` with parentheses, integer or decimal-free
rational literals and a single variable (``x`` or ``t``).  ``2x`` is read as
``2*x``.  Evaluation is delegated to an *algebra* object so the same grammar
serves moduli (plain integer polynomials) and ring elements (where ``x^-1``
and division are meaningful).
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import poly as P
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class PolyAlgebra:
    """Evaluates expressions to rational polynomials (no negative powers)."""

    def __init__(self, var: str = "x"):
        self.var_names = {var, "X"} if var == "x" else {var}

    def const(self, c: Fraction):
        return P.strip((c,))

    def var(self, name):
        if name not in self.var_names:
            raise ParseError(f"unknown symbol {name!r}")
        return (0, 1)

    def add(self, a, b):
        return P.add(a, b)

    def sub(self, a, b):
        return P.sub(a, b)

    def mul(self, a, b):
        return P.mul(a, b)

    def neg(self, a):
        return P.neg(a)

    def div(self, a, b):
        if len(b) != 1:
            raise ParseError("division by a non-constant polynomial")
        return P.scale(a, 1 / Fraction(b[0]))

    def pow(self, a, k):
        if k < 0:
            raise ParseError("negative power of a polynomial")
        out = (1,)
        for _ in range(k):
            out = P.mul(out, a)
        return out


class _Parser:
    def __init__(self, text, algebra):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alg = algebra
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        out = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.i += 1
            out = self.term()
            if val == "-":
                out = self.alg.neg(out)
        else:
            out = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            out = self.alg.add(out, rhs) if op == "+" else self.alg.sub(out, rhs)
        return out

    def term(self):
        out = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.i += 1
                rhs = self.power()
                out = self.alg.mul(out, rhs) if val == "*" else self.alg.div(out, rhs)
            elif kind == "name" or (kind == "op" and val == "("):
                out = self.alg.mul(out, self.power())
            else:
                return out

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.i += 1
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
            if self.peek() == ("op", "("):
                self.i += 1
                if self.peek()[0] == "op" and self.peek()[1] in "+-":
                    sign *= -1 if self.take()[1] == "-" else 1
                k = int(self.take("num")[1])
                self.take("op", ")")
            else:
                k = int(self.take("num")[1])
            return self.alg.pow(base, sign * k)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.i += 1
            return self.alg.const(Fraction(int(val)))
        if kind == "name":
            self.i += 1
            return self.alg.var(val)
        if kind == "op" and val == "(":
            self.i += 1
            out = self.expr()
            self.take("op", ")")
            return out
        if kind == "op" and val == "-":
            self.i += 1
            return self.alg.neg(self.power())
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expression(text: str, algebra):
    return _Parser(text, algebra).parse()


def parse_integer_poly(text: str, var: str = "x") -> tuple[int, ...]:
    """Parse a modulus given either as ``"c0,c1,...,cd"`` or in human form.

    Coefficients must be integers.
    """
    text = text.strip()
    if "," in text or re.fullmatch(r"[-+]?\d+", text):
        coeffs = []
        for part in text.split(","):
            part = part.strip()
            if not re.fullmatch(r"[-+]?\d+", part):
                raise ParseError(f"non-integer coefficient {part!r}")
            coeffs.append(int(part))
        return tuple(P.strip(coeffs))
    p = parse_expression(text, PolyAlgebra(var))
    if not P.is_integral(p):
        raise ParseError(f"non-integer coefficients in {text!r}")
    return tuple(int(c) for c in p)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc
