"""Canonical text for automorphisms and elements.

Every printed form parses back to the same object with :mod:`.parser`.
"""

from __future__ import annotations

import re
from fractions import Fraction

_ATOM = re.compile(r"[A-Za-z_0-9]+")


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _power(name: str, k) -> str:
    return name if k == 1 else f"{name}^{k}"


def _gt_shift(setting, vec) -> str | None:
    n = setting.meta["n"]
    if any(vec[:n]):
        return None
    from ..presets.gt import gt_layout

    parts = []
    for v, (k, j) in enumerate(gt_layout(n)):
        c = vec[v]
        if c:
            if Fraction(c).denominator != 1:
                return None
            parts.append(_power(f"d({k},{j})", int(c)))
    return "*".join(parts)


def _sigma_shift(setting, vec, step) -> str | None:
    parts = []
    for v, c in enumerate(vec):
        if c:
            k = Fraction(c) / step
            if k.denominator != 1:
                return None
            name = "s" if setting.meta.get("kind") == "gwa" else f"s({v + 1})"
            parts.append(_power(name, int(k)))
    return "*".join(parts)


def format_aut(setting, a) -> str:
    """Preset-aware name: ``id``, ``d(k,i)`` products, ``s(i)`` products, ``shift(..)`` or ``aut(..)``."""
    if a.is_identity():
        return "id"
    if a.is_pure_shift():
        vec = a.shift
        kind = setting.meta.get("kind") if setting is not None else None
        named = None
        if kind == "gt":
            named = _gt_shift(setting, vec)
        elif kind == "torus":
            named = _sigma_shift(setting, vec, Fraction(-1))
        elif kind == "gwa":
            named = _sigma_shift(setting, vec, -Fraction(setting.meta["q"]))
        if named:
            return named
        return "shift(" + ", ".join(_q(x) for x in vec) + ")"
    perm = ", ".join(str(p) for p in a.perm)
    scale = ", ".join(_q(x) for x in a.scale)
    shift = ", ".join(_q(x) for x in a.shift)
    return f"aut([{perm}], [{scale}], [{shift}])"


def format_coeff(setting, c) -> str:
    text = setting.show(c)
    return text if _ATOM.fullmatch(text) else f"({text})"


def format_element(x, brackets: bool | None = None) -> str:
    """Canonical text of a skew element.

    With brackets (the default for G-invariant elements of a setting with
    nontrivial G) each conjugation orbit prints once as ``[c * rep]`` with
    ``rep`` its smallest member.
    """
    from ..skewring import is_invariant
    from ..skewring.ops import orbit_partition

    s = x.setting
    if not x.terms:
        return "0"
    if brackets is None:
        brackets = not s.group.is_trivial() and is_invariant(x)
    if brackets:
        if not is_invariant(x):
            raise ValueError("bracket form needs a G-invariant element")
        parts = []
        for orb in orbit_partition(x):
            m = orb[0]
            parts.append(f"[{format_coeff(s, x.terms[m])} * {format_aut(s, m)}]")
        return " + ".join(parts)
    return " + ".join(f"{format_coeff(s, c)} * {format_aut(s, m)}" for m, c in x.sorted_terms())
