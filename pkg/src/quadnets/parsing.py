"""Polynomial-string parser.

Grammar (whitespace is ignored)::

    expr   := [+|-] term { (+|-) term }
    term   := factor { * factor }
    factor := atom [ ^ INT ]
    atom   := INT [ / INT ] | VARIABLE | ( expr )

Multiplication must be written with ``*``: ``X*(Y+W)`` parses, ``X(Y+W)`` and
``2X`` are rejected.  Nets use the variables ``X, Y, Z, W``; plane quartics use
``a, b, c`` (aliases ``l1, l2, l3``, ``λ1, λ2, λ3``, ``lambda1`` ...).
"""

from __future__ import annotations

from fractions import Fraction

from .exact.fields import QQ
from .exact.poly import MultiPoly

NET_VARIABLES = {"X": 0, "Y": 1, "Z": 2, "W": 3}
NET_NAMES = ("X", "Y", "Z", "W")

QUARTIC_VARIABLES = {}
for _i, _n in enumerate("abc"):
    for _alias in (_n, f"l{_i + 1}", f"λ{_i + 1}", f"lambda{_i + 1}", f"L{_i + 1}"):
        QUARTIC_VARIABLES[_alias] = _i
QUARTIC_NAMES = ("a", "b", "c")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, text, pos, line=None):
        self.message = message
        self.text = text
        self.column = pos + 1
        self.line = line
        where = f"line {line}, column {self.column}" if line is not None else f"column {self.column}"
        super().__init__(f"{message} at {where}: {text!r}")


class _Parser:
    def __init__(self, text, variables, names, field, line):
        self.text = text
        self.vars = variables
        self.names = names
        self.field = field
        self.line = line
        self.pos = 0
        self.nvars = len(names)

    def error(self, msg, pos=None):
        raise PolynomialSyntaxError(msg, self.text, self.pos if pos is None else pos, self.line)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def const(self, c):
        return MultiPoly.constant(self.field, self.nvars, c, self.names)

    def parse(self):
        if not self.text.strip():
            self.error("empty polynomial")
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        total = self.term().scale(sign)
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self):
        value = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.factor()
            elif ch and (ch.isalnum() or ch in "(λ"):
                self.error("missing '*' (implicit multiplication is not allowed)")
            else:
                return value

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected an integer exponent")
            base = base ** int(self.text[start:self.pos])
        return base

    def number(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def atom(self):
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch.isdigit():
            num = self.number()
            if self.peek() == "/":
                self.pos += 1
                self.skip()
                if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                    self.error("expected a denominator")
                den_pos = self.pos
                den = self.number()
                if den == 0:
                    self.error("zero denominator", den_pos)
                return self.const(Fraction(num, den) if self.field == QQ else self.field(num) / self.field(den))
            return self.const(num)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "λ_"):
            self.pos += 1
        name = self.text[start:self.pos]
        if not name:
            self.error(f"unexpected {ch!r}")
        if name not in self.vars:
            self.error(f"unknown variable {name!r}", start)
        return MultiPoly.variable(self.field, self.nvars, self.vars[name], self.names)


def parse_polynomial(text, variables=NET_VARIABLES, names=NET_NAMES, field=QQ, line=None):
    return _Parser(text, variables, names, field, line).parse()


def parse_quadric_poly(text, field=QQ, line=None):
    p = parse_polynomial(text, NET_VARIABLES, NET_NAMES, field, line)
    if p.is_zero() or not p.is_homogeneous(2):
        raise PolynomialSyntaxError("not a nonzero homogeneous quadratic form", text, 0, line)
    return p


def parse_quartic_poly(text, field=QQ, line=None):
    p = parse_polynomial(text, QUARTIC_VARIABLES, QUARTIC_NAMES, field, line)
    if p.is_zero() or not p.is_homogeneous(4):
        raise PolynomialSyntaxError("not a nonzero homogeneous quartic form", text, 0, line)
    return p
