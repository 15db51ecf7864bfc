"""Rational functions in canonical form.

A :class:`RatFunc` stores ``num/den`` with integer-coefficient polynomials,
``gcd(num, den) = 1`` in Z[x] (so integer contents are coprime too) and the
graded-lex leading coefficient of ``den`` positive. Two values are equal iff
their stored representations are equal.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import DivisionByZero, PoleAtPoint, ZeroDenominator
from .poly import (
    Poly,
    _divexact,
    _gcd,
    _is_const,
    _lead,
    _mul,
    _add,
    _sub,
    _neg,
    _pad,
    _subst_affine,
)


def _is_one(d: dict) -> bool:
    return len(d) == 1 and _is_const(d) and next(iter(d.values())) == 1


def _fix_sign(num: dict, den: dict):
    if den[_lead(den)] < 0:
        return _neg(num), _neg(den)
    return num, den


def _canon(num: dict, den: dict, n: int):
    """Full normalization from integer-or-rational coefficient dicts."""
    if not den:
        raise ZeroDenominator("zero denominator")
    if not num:
        return {}, {(0,) * n: 1}
    m = 1
    for c in num.values():
        if type(c) is Fraction:
            m = math.lcm(m, c.denominator)
    for c in den.values():
        if type(c) is Fraction:
            m = math.lcm(m, c.denominator)
    if m != 1:
        num = {e: int(c * m) for e, c in num.items()}
        den = {e: int(c * m) for e, c in den.items()}
    if _is_one(den):
        return num, den
    g = _gcd(num, den)
    if not _is_one(g):
        num = _divexact(num, g)
        den = _divexact(den, g)
    return _fix_sign(num, den)


class RatFunc:
    """Element of Q(x_0, ..., x_{n-1}) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, nvars: int | None = None):
        num = _as_poly(num, nvars)
        den = _as_poly(den, nvars)
        n = max(num.nvars, den.nvars, nvars or 0)
        a, b = _canon(_pad(num.terms, num.nvars, n), _pad(den.terms, den.nvars, n), n)
        self.num = Poly._raw(a, n)
        self.den = Poly._raw(b, n)
        self._hash = None

    @classmethod
    def _raw(cls, a: dict, b: dict, n: int) -> "RatFunc":
        r = object.__new__(cls)
        r.num = Poly._raw(a, n)
        r.den = Poly._raw(b, n)
        r._hash = None
        return r

    @classmethod
    def const(cls, c, nvars: int = 0) -> "RatFunc":
        c = Fraction(c)
        z = (0,) * nvars
        if not c:
            return cls._raw({}, {z: 1}, nvars)
        return cls._raw({z: c.numerator}, {z: c.denominator}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "RatFunc":
        return cls._raw(Poly.var(i, nvars).terms, {(0,) * nvars: 1}, nvars)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, 1, p.nvars)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def with_nvars(self, n: int) -> "RatFunc":
        if n == self.nvars:
            return self
        return RatFunc._raw(self.num.with_nvars(n).terms, self.den.with_nvars(n).terms, n)

    # predicates
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return Fraction(self.num.constant_value()) / self.den.constant_value()

    def as_poly(self) -> Poly:
        """The value as a polynomial; raises if the denominator is not constant."""
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        c = self.den.constant_value()
        return self.num if c == 1 else self.num * Fraction(1, c)

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    # arithmetic
    def _align(self, other: "RatFunc"):
        n = max(self.nvars, other.nvars)
        a, b = self.with_nvars(n), other.with_nvars(n)
        return a.num.terms, a.den.terms, b.num.terms, b.den.terms, n

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other, self.nvars)
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d, n = self._align(other)
        if not a:
            return other.with_nvars(n)
        if not c:
            return self.with_nvars(n)
        if b == d:
            return RatFunc._raw(*_canon(_add(a, c), b, n), n)
        g = _gcd(b, d)
        if _is_one(g):
            num = _add(_mul(a, d), _mul(c, b))
            if not num:
                return RatFunc.const(0, n)
            return RatFunc._raw(num, _mul(b, d), n)
        b1 = _divexact(b, g)
        d1 = _divexact(d, g)
        num = _add(_mul(a, d1), _mul(c, b1))
        if not num:
            return RatFunc.const(0, n)
        den = _mul(g, _mul(b1, d1))
        h = _gcd(num, g)
        if not _is_one(h):
            num = _divexact(num, h)
            den = _divexact(den, h)
        return RatFunc._raw(*_fix_sign(num, den), n)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(_neg(self.num.terms), self.den.terms, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d, n = self._align(other)
        if not a or not c:
            return RatFunc.const(0, n)
        if _is_one(b) and _is_one(d):
            return RatFunc._raw(_mul(a, c), b, n)
        g1 = _gcd(a, d)
        g2 = _gcd(c, b)
        if not _is_one(g1):
            a = _divexact(a, g1)
            d = _divexact(d, g1)
        if not _is_one(g2):
            c = _divexact(c, g2)
            b = _divexact(b, g2)
        return RatFunc._raw(*_fix_sign(_mul(a, c), _mul(b, d)), n)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc._raw(*_fix_sign(self.den.terms, self.num.terms), self.nvars)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponent required")
        if k < 0:
            return self.inverse() ** (-k)
        n = self.nvars
        return RatFunc._raw(
            (self.num ** k).terms, (self.den ** k).terms if k else {(0,) * n: 1}, n
        )

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # substitution and evaluation
    def substitute_affine(self, perm, scale, shift) -> "RatFunc":
        n = max(self.nvars, len(perm))
        a = _subst_affine(self.num.terms, self.nvars, perm, scale, shift)
        b = _subst_affine(self.den.terms, self.nvars, perm, scale, shift)
        # substitution is a ring automorphism, so num and den stay coprime;
        # only the rational content and sign need renormalizing
        return RatFunc._raw(*_renorm(a, b, n), n)

    def evaluate(self, point: Sequence | Mapping) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleAtPoint("denominator vanishes at the given point")
        r = Fraction(self.num.evaluate(point)) / d
        return r.numerator if r.denominator == 1 else r

    def __repr__(self):
        from .serialize import ratfunc_to_text

        return f"RatFunc({ratfunc_to_text(self)!r})"


def _renorm(a: dict, b: dict, n: int):
    if not a:
        return {}, {(0,) * n: 1}
    coeffs = list(a.values()) + list(b.values())
    m = 1
    for c in coeffs:
        if type(c) is Fraction:
            m = math.lcm(m, c.denominator)
    if m != 1:
        a = {e: int(c * m) for e, c in a.items()}
        b = {e: int(c * m) for e, c in b.items()}
    g = math.gcd(math.gcd(*a.values()), math.gcd(*b.values()))
    if g != 1:
        a = {e: c // g for e, c in a.items()}
        b = {e: c // g for e, c in b.items()}
    return _fix_sign(a, b)


def _as_poly(x, nvars) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x, nvars or 0)
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def normalize_ratfunc(num: Poly, den: Poly) -> RatFunc:
    """Canonical representative of ``num/den``."""
    if not isinstance(den, Poly) and not den:
        raise ZeroDenominator("zero denominator")
    return RatFunc(num, den)


def ratfunc_arith(op: str, f: RatFunc, g: RatFunc) -> RatFunc:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def evaluate_ratfunc(f: RatFunc, point: Sequence | Mapping) -> Fraction:
    return f.evaluate(point)
