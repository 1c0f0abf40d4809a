"""Polynomial expression grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coeff | var | factor '^' nat | '(' expr ')'
    coeff  := int | int '/' int

'*' is order-significant (the ring is noncommutative); coefficients
commute and may be rational.  The optional leading sign is a convenience
extension so that printed polynomials like "-y - 1" re-parse; everything a
Poly prints is valid input.
"""

from __future__ import annotations

import re

from .errors import PolyParseError, UnknownVariable
from .ring import Poly, QRing

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ring: QRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise PolyParseError(f"expected {op!r}", pos)
        return self.next()

    def parse(self) -> Poly:
        result = self.expr()
        kind, value, pos = self.peek()
        if kind is not None:
            raise PolyParseError(f"unexpected trailing input {value!r}", pos)
        return result

    def expr(self) -> Poly:
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.next()
            negate = value == "-"
        result = self.term()
        if negate:
            result = -result
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                rhs = self.term()
                result = result - rhs if value == "-" else result + rhs
            else:
                return result

    def term(self) -> Poly:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.next()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Poly:
        kind, value, pos = self.peek()
        if kind == "int":
            self.next()
            base = self._coeff(int(value))
        elif kind == "name":
            self.next()
            if value not in self.ring.names:
                raise UnknownVariable(value, pos)
            base = self.ring.var(self.ring.names.index(value))
        elif kind == "op" and value == "(":
            self.next()
            base = self.expr()
            self.expect_op(")")
        else:
            raise PolyParseError("expected a coefficient, variable or '('", pos)
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "^":
                self.next()
                kind2, value2, pos2 = self.next()
                if kind2 != "int":
                    raise PolyParseError("exponent must be a natural number", pos2)
                base = base ** int(value2)
            else:
                return base

    def _coeff(self, numerator: int) -> Poly:
        kind, value, _ = self.peek()
        if kind == "op" and value == "/":
            self.next()
            kind2, value2, pos2 = self.peek()
            if kind2 == "int":
                self.next()
                return self.ring.scalar(self.ring.field.ratio(numerator, int(value2)))
            # '/' not followed by an int is not part of the grammar
            raise PolyParseError("'/' must separate two integers", pos2)
        return self.ring.scalar(self.ring.field.of(numerator))


def parse_poly(text: str, ring: QRing) -> Poly:
    """Parse text into a canonical polynomial of the given ring."""
    if not text.strip():
        raise PolyParseError("empty polynomial", 0)
    return _Parser(text, ring).parse()


def parse_generators(text: str, ring: QRing):
    """Comma-separated generator list, e.g. "x, y-1"."""
    parts = [p for p in text.split(",")]
    if not parts or all(not p.strip() for p in parts):
        return []
    return [parse_poly(p, ring) for p in parts]
