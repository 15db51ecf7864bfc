"""Parser for element expressions over a setting.

Grammar (``*`` and ``/`` bind tighter than ``+``/``-``; ``^`` tighter still)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | VAR | aut | '(' expr ')' | '[' expr ']'
    aut    := 'id' | 's' | 'd(' INT ',' INT ')' | 's(' INT ')'
            | 'shift(' q, ... ')' | 'aut([' INT, ... '], [' q, ... '], [' q, ... '])'

Every value is a skew element: numbers and variables are scalars at the
identity, automorphism atoms are ``1 * phi``, and juxtaposition by ``*`` is
the ring product.  ``[a * phi]`` is the orbit sum built by make_invariant.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..autgroup import AffineAut, compose_aut, invert_aut
from ..errors import IndexOutOfRange, ParseError, UnknownVariable
from ..skewring import InvariantElement, Setting, SkewElement, is_invariant, make_invariant, skew_mul

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_AUT_CALLS = ("d", "s", "shift", "aut")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        idx = m.lastindex
        kind = ("num", "name", "op")[idx - 1]
        toks.append((kind, m.group(idx), m.start(idx)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class ElementParser:
    def __init__(self, setting: Setting, text: str):
        self.s = setting
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, ops: str) -> bool:
        t = self.peek()
        return t[0] == "op" and t[1] in ops

    def fail(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.text, self.peek()[2] if pos is None else pos)

    def expect(self, op: str):
        if not (self.peek()[0] == "op" and self.peek()[1] == op):
            if self.peek()[0] == "end":
                self.fail("unexpected end of input")
            self.fail(f"expected {op!r}")
        self.take()

    # grammar
    def parse(self) -> SkewElement:
        x = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected input")
        if isinstance(x, InvariantElement) or is_invariant(x):
            return InvariantElement._raw(self.s, x.terms)
        return x

    def expr(self):
        x = self.term()
        while self.at_op("+-"):
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.unary()
        while self.at_op("*/"):
            op, pos = self.take()[1:]
            y = self.unary()
            if op == "*":
                x = skew_mul(x, y)
            else:
                r = self._scalar_of(y)
                if r is None:
                    self.fail("can only divide by a scalar", pos)
                if r.is_zero():
                    self.fail("division by zero", pos)
                x = skew_mul(x, SkewElement.scalar(self.s, r.inverse()))
        return x

    def unary(self):
        if self.at_op("+-"):
            op = self.take()[1]
            x = self.unary()
            return -x if op == "-" else x
        return self.power()

    def power(self):
        x = self.atom()
        if not self.at_op("^"):
            return x
        pos = self.take()[2]
        neg = False
        if self.at_op("-"):
            self.take()
            neg = True
        t = self.peek()
        if t[0] != "num":
            self.fail("expected integer exponent")
        self.take()
        k = -int(t[1]) if neg else int(t[1])
        r = self._scalar_of(x)
        if r is not None:
            if k < 0 and r.is_zero():
                self.fail("division by zero", pos)
            return SkewElement.scalar(self.s, r ** k)
        if len(x.terms) == 1:
            (m, c), = x.terms.items()
            if c.is_constant() and c.constant_value() == 1:
                a = m if k >= 0 else invert_aut(m)
                out = self.s.identity()
                for _ in range(abs(k)):
                    out = compose_aut(out, a)
                return SkewElement._raw(self.s, {out: c})
        if k < 0:
            self.fail("negative power of a non-invertible element", pos)
        return x ** k

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return SkewElement.scalar(self.s, int(val))
        if kind == "name":
            if self.peek(1)[:2] == ("op", "(") and val in _AUT_CALLS:
                return self._mono(self.aut_call())
            if val in self.s.names:
                self.take()
                return SkewElement.scalar(self.s, self.s.var(val))
            if val == "id":
                self.take()
                return self._mono(self.s.identity())
            if val == "s":
                self.take()
                return self._mono(self._sigma(1, pos))
            self.fail(f"unknown name {val!r}")
        if kind == "op" and val == "(":
            self.take()
            x = self.expr()
            self.expect(")")
            return x
        if kind == "op" and val == "[":
            self.take()
            x = self.expr()
            self.expect("]")
            return self._bracket(x, pos)
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {val!r}")

    # helpers
    def _scalar_of(self, x: SkewElement):
        e = self.s.identity()
        if not x.terms:
            return self.s.const(0)
        if set(x.terms) == {e}:
            return x.terms[e]
        return None

    def _mono(self, a: AffineAut) -> SkewElement:
        return SkewElement._raw(self.s, {a: self.s.const(1)})

    def _bracket(self, x: SkewElement, pos: int) -> InvariantElement:
        if not x.terms:
            return InvariantElement._raw(self.s, {})
        if len(x.terms) != 1:
            self.fail("bracket needs a single term 'coefficient * automorphism'", pos)
        (m, c), = x.terms.items()
        return make_invariant(self.s, c, m)

    def _int(self) -> int:
        neg = False
        if self.at_op("-"):
            self.take()
            neg = True
        t = self.peek()
        if t[0] != "num":
            self.fail("expected an integer")
        self.take()
        return -int(t[1]) if neg else int(t[1])

    def _rational(self) -> Fraction:
        q = Fraction(self._int())
        if self.at_op("/"):
            pos = self.take()[2]
            d = self._int()
            if d == 0:
                self.fail("division by zero", pos)
            q /= d
        return q

    def _list(self, item, close: str) -> list:
        out = []
        if self.at_op(close):
            return out
        out.append(item())
        while self.at_op(","):
            self.take()
            out.append(item())
        return out

    def _sigma(self, i: int, pos: int) -> AffineAut:
        kind = self.s.meta.get("kind")
        n = self.s.nvars
        if kind == "gwa":
            step = -Fraction(self.s.meta["q"])
        elif kind == "torus":
            step = Fraction(-1)
        else:
            self.fail("'s' names a shift only in torus and gwa settings", pos)
        if not 1 <= i <= n:
            self.fail(f"s({i}) out of range", pos)
        vec = [0] * n
        vec[i - 1] = step
        return AffineAut.from_shift(vec)

    def aut_call(self) -> AffineAut:
        _, name, pos = self.take()
        self.expect("(")
        n = self.s.nvars
        if name == "d":
            k = self._int()
            self.expect(",")
            i = self._int()
            self.expect(")")
            if self.s.meta.get("kind") != "gt":
                self.fail("'d(k,i)' names a shift only in gt settings", pos)
            from ..presets.gt import gt_delta

            try:
                return gt_delta(self.s, k, i)
            except IndexOutOfRange as e:
                raise ParseError(str(e), self.text, pos) from None
        if name == "s":
            i = self._int()
            self.expect(")")
            return self._sigma(i, pos)
        if name == "shift":
            vec = self._list(self._rational, ")")
            self.expect(")")
            if len(vec) != n:
                self.fail(f"shift needs {n} entries, got {len(vec)}", pos)
            return AffineAut.from_shift(vec)
        # aut([perm], [scale], [shift])
        parts = []
        for j in range(3):
            if j:
                self.expect(",")
            self.expect("[")
            parts.append(self._list(self._int if j == 0 else self._rational, "]"))
            self.expect("]")
        self.expect(")")
        perm, scale, shift = parts
        if not (len(perm) == len(scale) == len(shift) == n):
            self.fail(f"aut needs three lists of length {n}", pos)
        try:
            return AffineAut(perm, scale, shift)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad automorphism: {e}", self.text, pos) from None


def parse_element(setting: Setting, text: str) -> SkewElement:
    """Parse ``text``; G-invariant results come back as InvariantElement."""
    try:
        return ElementParser(setting, text).parse()
    except UnknownVariable as e:
        raise ParseError(f"unknown variable {e}", text, 0) from None


def parse_aut(setting: Setting, text: str) -> AffineAut:
    """Parse a product of automorphism atoms."""
    x = parse_element(setting, text)
    if len(x.terms) != 1:
        raise ParseError("expected an automorphism", text, 0)
    (m, c), = x.terms.items()
    if not (c.is_constant() and c.constant_value() == 1):
        raise ParseError("expected an automorphism without coefficient", text, 0)
    return m
