"""A small recursive-descent parser for class expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | '(' expr ')'

Division is allowed by scalars and by classes with nonzero constant term
(through the truncated inverse), so ``(1+h)^5/(1+5*h)`` works.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .graded_algebra import GradedClass, Ring, truncated_inverse

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ExpressionError(ValueError):
    pass


def parse_relations(spec: str) -> Ring:
    """``"h^4,psi^2"`` -> Q[h, psi]/(h^4, psi^2).

    A generator of higher degree is written ``name[d]^n``.  An optional
    ``@p/q`` suffix sets the integration normalization.
    """
    spec = spec.strip()
    norm = Fraction(1)
    if "@" in spec:
        spec, _, norm_s = spec.partition("@")
        try:
            norm = Fraction(norm_s.strip())
        except (ValueError, ZeroDivisionError):
            raise ExpressionError(f"bad normalization {norm_s!r}") from None
    gens = []
    for item in spec.split(","):
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)(?:\[(\d+)\])?\^(\d+)\s*", item)
        if not m:
            raise ExpressionError(f"bad relation {item!r}; expected e.g. h^4 or x[2]^3")
        gens.append((m[1], int(m[2] or 1), int(m[3])))
    try:
        return Ring.build(gens, norm)
    except ValueError as e:
        raise ExpressionError(str(e)) from None


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m[1]:
            tokens.append(("num", m[1]))
        elif m[2]:
            tokens.append(("name", m[2]))
        else:
            tokens.append(("op", m[3]))
        pos = m.end()
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, op=None):
        tok = self.tokens[self.i]
        if op is not None and tok != ("op", op):
            raise ExpressionError(f"expected {op!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> GradedClass:
        value = self.expr()
        if self.peek()[0] != "end":
            raise ExpressionError(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else _divide(value, rhs)
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, text = self.take()
            if kind != "num":
                raise ExpressionError("exponent must be a nonnegative integer")
            return base ** int(text)
        return base

    def atom(self):
        kind, text = self.take()
        if kind == "num":
            return self.ring.scalar(int(text))
        if kind == "name":
            if text not in self.ring.names:
                raise ExpressionError(f"unknown generator {text!r}; ring has {', '.join(self.ring.names)}")
            return self.ring.gen(text)
        if (kind, text) == ("op", "("):
            value = self.expr()
            self.take(")")
            return value
        raise ExpressionError(f"unexpected {text or 'end of input'!r}")


def _divide(a: GradedClass, b: GradedClass) -> GradedClass:
    c = b.constant_term()
    if c == 0:
        raise ExpressionError(f"cannot divide by {b}: constant term is zero")
    return a * truncated_inverse(b / c) / c


def parse_class(ring: Ring, text: str) -> GradedClass:
    return _Parser(ring, text).parse()
