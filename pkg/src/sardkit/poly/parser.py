"""Recursive-descent parser for polynomial expressions.

Grammar::

    EXPR   := TERM (('+'|'-') TERM)*
    TERM   := FACTOR ('*' FACTOR)*
    FACTOR := '-' FACTOR | RATIONAL | VAR ('^' NAT)? | '(' EXPR ')'

``^`` is only accepted directly after a variable name.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomial import Poly, default_names


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        # offsets are reported in bytes of the UTF-8 encoding
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at byte offset {self.offset}")


class UnknownVariable(PolySyntaxError):
    def __init__(self, name: str, text: str, pos: int):
        self.name = name
        super().__init__(f"unknown variable {name!r}", text, pos)


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.pos = 0
        self.names = {n: i for i, n in enumerate(names)}
        self.n = len(names)

    def error(self, msg, pos=None):
        return PolySyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        if not self.text.strip():
            raise self.error("empty expression")
        p = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def _int(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def factor(self) -> Poly:
        c = self.peek()
        if not c:
            raise self.error("unexpected end of input")
        if c == "-":
            self.pos += 1
            return -self.factor()
        if c == "+":
            self.pos += 1
            return self.factor()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            if self.peek() == "^":
                raise self.error("exponent on a parenthesized group is not supported")
            return inner
        if c.isdigit():
            num = self._int()
            if self.peek() == "/":
                self.pos += 1
                den_pos = self.pos
                den = self._int()
                if den == 0:
                    raise self.error("zero denominator", den_pos)
                value = Fraction(num, den)
            else:
                value = Fraction(num)
            if self.peek() == "^":
                raise self.error("exponent on a number is not supported")
            return Poly.const(value, self.n)
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.names:
                raise UnknownVariable(name, self.text, start)
            power = 1
            if self.peek() == "^":
                self.pos += 1
                power = self._int()
            return Poly.var(self.names[name], self.n, power)
        raise self.error(f"unexpected {c!r}")


def parse_poly(text: str, names: Sequence[str] | int | None = None) -> Poly:
    """Parse ``text`` into a :class:`Poly` over the variables ``names``.

    ``names`` may also be an arity, in which case the default names are used.
    """
    if names is None:
        names = default_names(3)
    elif isinstance(names, int):
        names = default_names(names)
    return _Parser(text, list(names)).parse()
