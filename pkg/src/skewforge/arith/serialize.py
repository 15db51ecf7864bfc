"""Text and JSON forms of polynomials and rational functions.

Both forms list terms in descending graded-lex order and round-trip
exactly. Variable ``i`` prints as ``names[i]`` (default ``x{i}``).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import ParseError, UnknownVariable
from .poly import Poly
from .ratfunc import RatFunc

Names = Sequence[str] | Callable[[int], str] | None


def _namer(names: Names) -> Callable[[int], str]:
    if names is None:
        return lambda i: f"x{i}"
    if callable(names):
        return names
    return lambda i: names[i]


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_to_text(p: Poly, names: Names = None) -> str:
    name = _namer(names)
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            name(i) if k == 1 else f"{name(i)}^{k}" for i, k in enumerate(e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _simple_factor(p: Poly) -> bool:
    # a single power x^k with unit coefficient, or a positive constant
    if len(p.terms) != 1:
        return False
    (e, c), = p.terms.items()
    if not any(e):
        return c > 0
    return c == 1 and sum(1 for k in e if k) == 1


def ratfunc_to_text(f: RatFunc, names: Names = None) -> str:
    num = poly_to_text(f.num, names)
    if f.den.is_constant() and f.den.constant_value() == 1:
        return num
    if len(f.num.terms) > 1:
        num = f"({num})"
    den = poly_to_text(f.den, names)
    if not _simple_factor(f.den):
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    """Recursive-descent parser for rational expressions in named variables."""

    def __init__(self, text: str, lookup: Callable[[str], int], nvars: int):
        self.text = text
        self.lookup = lookup
        self.nvars = nvars
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.end() == pos or m.group(0).strip() == "":
                break
            start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            self.toks.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def expect(self, op):
        t = self.peek()
        if t[0] != "op" or t[1] != op:
            self.fail(f"expected {op!r}")
        self.take()

    def parse(self) -> RatFunc:
        r = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected input")
        return r

    def expr(self):
        r = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            r = r + t if op == "+" else r - t
        return r

    def term(self):
        r = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            pos = self.peek()[2]
            t = self.unary()
            if op == "*":
                r = r * t
            else:
                if t.is_zero():
                    raise ParseError("division by zero", self.text, pos)
                r = r / t
        return r

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            r = self.unary()
            return -r if op == "-" else r
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                neg = True
            t = self.peek()
            if t[0] != "num":
                self.fail("expected integer exponent")
            self.take()
            k = int(t[1])
            if neg and base.is_zero():
                raise ParseError("division by zero", self.text, t[2])
            base = base ** (-k if neg else k)
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return RatFunc.const(int(val), self.nvars)
        if kind == "name":
            self.take()
            try:
                i = self.lookup(val)
            except (KeyError, UnknownVariable):
                raise ParseError(f"unknown variable {val!r}", self.text, pos) from None
            return RatFunc.var(i, self.nvars)
        if kind == "op" and val == "(":
            self.take()
            r = self.expr()
            self.expect(")")
            return r
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {val!r}")


def _default_lookup(nvars: int):
    def look(name: str) -> int:
        m = re.fullmatch(r"x(\d+)", name)
        if not m or int(m.group(1)) >= nvars:
            raise UnknownVariable(name)
        return int(m.group(1))

    return look


def ratfunc_from_text(text: str, nvars: int, names: Sequence[str] | None = None) -> RatFunc:
    if names is None:
        lookup = _default_lookup(nvars)
    else:
        table = {s: i for i, s in enumerate(names)}
        lookup = table.__getitem__
    return _Parser(text, lookup, nvars).parse()


def poly_from_text(text: str, nvars: int, names: Sequence[str] | None = None) -> Poly:
    f = ratfunc_from_text(text, nvars, names)
    if not f.is_polynomial():
        raise ParseError("expression is not a polynomial", text, 0)
    return f.as_poly()


# ---------------------------------------------------------------- JSON


def poly_to_json(p: Poly) -> list:
    return [[list(e), _json_coeff(c)] for e, c in p.sorted_terms()]


def _json_coeff(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def poly_from_json(data: list, nvars: int | None = None) -> Poly:
    terms = {}
    for e, c in data:
        terms[tuple(e)] = Fraction(c)
    return Poly(terms, nvars)


def ratfunc_to_json(f: RatFunc) -> dict:
    return {"nvars": f.nvars, "num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfunc_from_json(data: dict) -> RatFunc:
    n = data.get("nvars")
    num = poly_from_json(data["num"], n)
    den = poly_from_json(data["den"], n)
    return RatFunc(num, den, n)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))
