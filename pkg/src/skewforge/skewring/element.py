"""Elements of L*M and of its G-invariants.

An element is a finite sum ``sum_m x_m m`` with coefficients on the left.
The product is ``(r1 m1)(r2 m2) = (r1 * m1(r2)) (m1 o m2)``, and G acts by
``g(r m) = g(r) (g m g^-1)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..arith import RatFunc, ratfunc_from_json, ratfunc_to_json
from ..autgroup import (
    AffineAut,
    apply_automorphism,
    aut_from_json,
    aut_to_json,
    compose_aut,
    conjugate,
    stabilizer_and_orbit,
)
from ..errors import NotStabilizerInvariant, SettingMismatch
from .setting import Setting


class SkewElement:
    """Immutable finite sum of ``coefficient * automorphism`` terms."""

    __slots__ = ("setting", "terms", "_hash")

    def __init__(self, setting: Setting, terms: Mapping[AffineAut, RatFunc] | Iterable = ()):
        self.setting = setting
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        n = setting.nvars
        for m, c in items:
            if m.nvars != n:
                raise SettingMismatch("automorphism does not act on the setting's variables")
            if not isinstance(c, RatFunc):
                c = RatFunc.const(Fraction(c), n)
            elif c.nvars != n:
                c = c.with_nvars(n)
            if m in acc:
                acc[m] = acc[m] + c
            else:
                acc[m] = c
        self.terms = {m: c for m, c in acc.items() if not c.is_zero()}
        self._hash = None

    @classmethod
    def _raw(cls, setting: Setting, terms: dict):
        x = object.__new__(cls)
        x.setting = setting
        x.terms = terms
        x._hash = None
        return x

    @classmethod
    def zero(cls, setting: Setting):
        return cls._raw(setting, {})

    @classmethod
    def scalar(cls, setting: Setting, r) -> "SkewElement":
        """``r * e`` for ``r`` in L."""
        return cls(setting, {setting.identity(): r})

    @classmethod
    def monomial(cls, setting: Setting, r, m: AffineAut) -> "SkewElement":
        return cls(setting, {m: r})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, m: AffineAut) -> RatFunc:
        c = self.terms.get(m)
        return c if c is not None else RatFunc.const(0, self.setting.nvars)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: t[0].key)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def _check(self, other: "SkewElement"):
        if not self.setting.compatible(other.setting):
            raise SettingMismatch(f"settings {self.setting.label!r} and {other.setting.label!r} differ")

    # linear structure; results keep the invariant class only when both inputs are invariant
    def _wrap(self, other, terms: dict):
        cls = InvariantElement if (
            isinstance(self, InvariantElement) and (other is None or isinstance(other, InvariantElement))
        ) else SkewElement
        return cls._raw(self.setting, terms)

    def __add__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            if m in t:
                s = t[m] + c
                if s.is_zero():
                    del t[m]
                else:
                    t[m] = s
            else:
                t[m] = c
        return self._wrap(other, t)

    def __neg__(self):
        return self._wrap(None, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self + (-other)

    def scale(self, q) -> "SkewElement":
        """Multiply by a rational constant (central)."""
        q = Fraction(q)
        if not q:
            return self._wrap(None, {})
        return self._wrap(None, {m: c * q for m, c in self.terms.items()})

    def lmul(self, r: RatFunc) -> "SkewElement":
        """``r * self`` for ``r`` in L."""
        if r.is_zero():
            return SkewElement.zero(self.setting)
        return SkewElement._raw(self.setting, {m: r * c for m, c in self.terms.items()})

    def rmul(self, r: RatFunc) -> "SkewElement":
        """``self * r`` for ``r`` in L: the right factor is moved past each ``m``."""
        if r.is_zero():
            return SkewElement.zero(self.setting)
        out = {}
        for m, c in self.terms.items():
            v = c * apply_automorphism(m, r)
            if not v.is_zero():
                out[m] = v
        return SkewElement._raw(self.setting, out)

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return skew_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        r = SkewElement.scalar(self.setting, 1)
        if isinstance(self, InvariantElement):
            r = InvariantElement._raw(self.setting, r.terms)
        for _ in range(k):
            r = r * self
        return r

    def act(self, g: AffineAut) -> "SkewElement":
        """``g(x) = sum g(x_m) (g m g^-1)``."""
        out = {}
        for m, c in self.terms.items():
            out[conjugate(g, m)] = apply_automorphism(g, c)
        return SkewElement._raw(self.setting, out)

    # comparison
    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.setting.compatible(other.setting) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        from ..cli.printer import format_element

        return f"{type(self).__name__}({format_element(self, brackets=False)!r})"

    def as_skew(self) -> "SkewElement":
        return SkewElement._raw(self.setting, self.terms)


class InvariantElement(SkewElement):
    """A SkewElement known to be G-invariant."""

    __slots__ = ()

    @classmethod
    def from_skew(cls, x: SkewElement, check: bool = True) -> "InvariantElement":
        if check and not is_invariant(x):
            raise NotStabilizerInvariant("element is not G-invariant")
        return cls._raw(x.setting, x.terms)


def skew_mul(x: SkewElement, y: SkewElement) -> SkewElement:
    """Bilinear extension of ``(r1 m1)(r2 m2) = (r1 m1(r2)) (m1 o m2)``."""
    x._check(y)
    out: dict = {}
    for m1, r1 in x.terms.items():
        for m2, r2 in y.terms.items():
            c = r1 * apply_automorphism(m1, r2)
            if c.is_zero():
                continue
            k = compose_aut(m1, m2)
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
    if isinstance(x, InvariantElement) and isinstance(y, InvariantElement):
        r = InvariantElement._raw(x.setting, out)
        assert is_invariant(r), "product of invariant elements lost invariance"
        return r
    return SkewElement._raw(x.setting, out)


def support(x: SkewElement) -> frozenset:
    return x.support()


def is_invariant(x: SkewElement) -> bool:
    """``x_{m^g} = g(x_m)`` for every g in G and every support key m."""
    G = x.setting.group
    if G.is_trivial():
        return True
    for g in G.generators:
        for m, c in x.terms.items():
            k = conjugate(g, m)
            d = x.terms.get(k)
            if d is None or d != apply_automorphism(g, c):
                return False
    return True


def make_invariant(setting: Setting, a: RatFunc, phi: AffineAut) -> InvariantElement:
    """``[a phi] = sum_{g in G/H_phi} g(a) phi^g``."""
    if not isinstance(a, RatFunc):
        a = RatFunc.const(Fraction(a), setting.nvars)
    a = a.with_nvars(setting.nvars)
    so = stabilizer_and_orbit(setting.group, phi)
    for h in so.stabilizer.elements:
        if apply_automorphism(h, a) != a:
            raise NotStabilizerInvariant(
                f"coefficient {setting.show(a)} is moved by the stabilizer of {phi!r}"
            )
    if a.is_zero():
        return InvariantElement._raw(setting, {})
    terms = {}
    for g, m in zip(so.coset_reps, so.orbit):
        terms[m] = apply_automorphism(g, a)
    return InvariantElement._raw(setting, terms)


def symmetrize(x: SkewElement) -> InvariantElement:
    """Reynolds average ``(1/|G|) sum_g g(x)``."""
    G = x.setting.group
    acc = SkewElement.zero(x.setting)
    for g in G.elements:
        acc = acc + x.act(g)
    return InvariantElement._raw(x.setting, acc.scale(Fraction(1, G.order)).terms)


# ---------------------------------------------------------------- JSON


def element_to_json(x: SkewElement) -> dict:
    return {
        "setting": x.setting.label,
        "terms": [{"aut": aut_to_json(m), "coeff": ratfunc_to_json(c)} for m, c in x.sorted_terms()],
    }


def element_from_json(setting: Setting, data: dict) -> SkewElement:
    if data.get("setting") not in (None, setting.label):
        raise SettingMismatch(f"element belongs to {data['setting']!r}, not {setting.label!r}")
    x = SkewElement(setting, [(aut_from_json(t["aut"]), ratfunc_from_json(t["coeff"])) for t in data["terms"]])
    if is_invariant(x):
        return InvariantElement._raw(setting, x.terms)
    return x
