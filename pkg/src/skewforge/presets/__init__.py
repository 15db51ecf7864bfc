"""Ready-made settings addressable by name.

Names: ``gt(n)``, ``gwa(a,q)``, ``torus(n,flavor)``, ``tensor(p1,p2)``,
``s2``, ``finite`` and ``skewpoly``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..errors import ParseError
from ..skewring import Setting
from .gt import (
    GTState,
    RelationCheck,
    build_gt,
    check_generic,
    commutator,
    gt_coefficient,
    gt_delta,
    gt_generator_image,
    gt_h,
    gt_layout,
    gt_module_act,
    gt_symbolic_act,
    gt_var,
    gt_verify_relations,
)
from .gwa import GWASpec, build_gwa, gwa_residuals, gwa_sigma
from .misc import (
    build_finite,
    build_s2,
    build_skewpoly,
    gk_bound,
    lift_aut,
    lift_element,
    lift_ratfunc,
    sign_flip,
    tensor_product_rings,
)
from .torus import FLAVORS, TorusPreset, TorusSpec, build_torus, reflection, torus_residuals


@dataclass
class Preset:
    name: str
    setting: Setting
    extras: dict = field(default_factory=dict)


def _split_call(text: str):
    """``name(arg, arg)`` -> ``(name, [args])`` splitting on top-level commas."""
    text = text.strip()
    if "(" not in text:
        if not text:
            raise ParseError("empty preset name", text, 0)
        return text, []
    head = text.index("(")
    if not text.endswith(")"):
        raise ParseError("expected ')'", text, len(text))
    name = text[:head].strip()
    body = text[head + 1:-1]
    args, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", text, head + 1 + i)
        elif ch == "," and depth == 0:
            args.append(body[start:i].strip())
            start = i + 1
    if depth:
        raise ParseError("unbalanced '('", text, len(text))
    if body.strip():
        args.append(body[start:].strip())
    return name, args


def _int(arg: str, text: str) -> int:
    try:
        return int(arg)
    except ValueError:
        raise ParseError(f"expected an integer, got {arg!r}", text, text.find(arg)) from None


@lru_cache(maxsize=32)
def get_preset(text: str) -> Preset:
    """Build (and cache) the preset named by ``text``."""
    name, args = _split_call(text)
    key = text.replace(" ", "")
    if name == "gt":
        if len(args) != 1:
            raise ParseError("gt takes one argument", text, 0)
        return Preset(key, build_gt(_int(args[0], text)))
    if name == "gwa":
        if not 1 <= len(args) <= 2:
            raise ParseError("gwa takes a polynomial and an optional shift", text, 0)
        q = Fraction(args[1]) if len(args) == 2 else Fraction(1)
        s, X, Y = build_gwa(GWASpec(args[0], q))
        return Preset(key, s, {"X": X, "Y": Y})
    if name == "torus":
        if not 1 <= len(args) <= 2:
            raise ParseError("torus takes n and an optional flavor", text, 0)
        p = build_torus(TorusSpec(_int(args[0], text), args[1] if len(args) == 2 else "plain"))
        return Preset(key, p.setting, dict(p.generators))
    if name == "tensor":
        if len(args) != 2:
            raise ParseError("tensor takes two presets", text, 0)
        a, b = get_preset(args[0]), get_preset(args[1])
        return Preset(key, tensor_product_rings(a.setting, b.setting))
    builders = {"s2": build_s2, "finite": build_finite, "skewpoly": build_skewpoly}
    if name in builders and not args:
        return Preset(key, builders[name]())
    raise ParseError(f"unknown preset {name!r}", text, 0)


PRESET_NAMES = ("gt(n)", "gwa(a,q)", "torus(n,flavor)", "tensor(p1,p2)", "s2", "finite", "skewpoly")

__all__ = [
    "FLAVORS",
    "GTState",
    "GWASpec",
    "PRESET_NAMES",
    "Preset",
    "RelationCheck",
    "TorusPreset",
    "TorusSpec",
    "build_finite",
    "build_gt",
    "build_gwa",
    "build_s2",
    "build_skewpoly",
    "build_torus",
    "check_generic",
    "commutator",
    "get_preset",
    "gk_bound",
    "gt_coefficient",
    "gt_delta",
    "gt_generator_image",
    "gt_h",
    "gt_layout",
    "gt_module_act",
    "gt_symbolic_act",
    "gt_var",
    "gt_verify_relations",
    "gwa_residuals",
    "gwa_sigma",
    "lift_aut",
    "lift_element",
    "lift_ratfunc",
    "reflection",
    "sign_flip",
    "tensor_product_rings",
    "torus_residuals",
]
