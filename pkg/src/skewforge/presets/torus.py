"""Differential operators on a torus as skew group rings.

Variables ``t1..tp`` with ``sigma_i: t_i -> t_i - 1``.  The plain flavor
realizes the Weyl algebra by ``x_i = sigma_i`` and ``d_i = t_i sigma_i^-1``.
The orthogonal flavors add the reflections ``t_i -> 2 - t_i``; there
``D_i = t_i sigma_i^-1 + 1 - sigma_i^-2`` keeps ``[D_i, x_i] = 1`` and the
reflection ``eps`` sends ``x -> x^-1`` and ``D -> -x^2 D``.

For the orthogonal flavors ``n`` is the dimension of the orthogonal Lie
algebra: ``n = 2p + 1`` or ``n = 2p`` gives ``p`` torus variables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

from ..arith import RatFunc
from ..autgroup import AffineAut, FiniteGroup, ShiftMonoid, apply_automorphism, trivial_group
from ..errors import RelationFailed, UnsupportedFlavor
from ..skewring import InvariantElement, Setting, SkewElement, is_invariant, make_invariant, skew_mul, symmetrize

FLAVORS = ("plain", "symmetric", "orthogonal-odd", "orthogonal-even")


@dataclass(frozen=True)
class TorusSpec:
    n: int
    flavor: str = "plain"

    def rank(self) -> int:
        """Number of torus variables."""
        if self.flavor not in FLAVORS:
            raise UnsupportedFlavor(f"unknown flavor {self.flavor!r}")
        n = self.n
        if self.flavor in ("plain", "symmetric"):
            if n < 1:
                raise UnsupportedFlavor("n must be at least 1")
            return n
        if self.flavor == "orthogonal-odd":
            if n < 3 or n % 2 == 0:
                raise UnsupportedFlavor(f"orthogonal-odd needs odd n >= 3, got {n}")
            return (n - 1) // 2
        if n < 2 or n % 2:
            raise UnsupportedFlavor(f"orthogonal-even needs even n >= 2, got {n}")
        return n // 2


class TorusPreset(NamedTuple):
    setting: Setting
    generators: dict


def reflection(i: int, p: int) -> AffineAut:
    """``t_i -> 2 - t_i``."""
    scale = [1] * p
    shift = [0] * p
    scale[i] = -1
    shift[i] = 2
    return AffineAut(list(range(p)), scale, shift)


def _sigma(i: int, p: int, k: int = 1) -> AffineAut:
    v = [0] * p
    v[i] = -k
    return AffineAut.from_shift(v)


def _elementary(vals, j, p):
    total = RatFunc.const(0, p)
    for combo in itertools.combinations(vals, j):
        total = total + math.prod(combo, start=RatFunc.const(1, p))
    return total


def _group_and_gamma(spec: TorusSpec, p: int):
    t = [RatFunc.var(i, p) for i in range(p)]
    swaps = [AffineAut.transposition(i, i + 1, p) for i in range(p - 1)]
    if spec.flavor == "plain":
        return trivial_group(p), t
    if spec.flavor == "symmetric":
        power = [sum((x ** k for x in t), RatFunc.const(0, p)) for k in range(1, p + 1)]
        return FiniteGroup(swaps, p, order_hint=math.factorial(p)), power
    sq = [(x - 1) ** 2 for x in t]
    if spec.flavor == "orthogonal-odd":
        gens = swaps + [reflection(i, p) for i in range(p)]
        gamma = [_elementary(sq, j, p) for j in range(1, p + 1)]
        return FiniteGroup(gens, p, order_hint=math.factorial(p) * 2 ** p), gamma
    refl = [reflection(i, p) for i in range(p)]
    gens = swaps + [refl[i] @ refl[j] for i, j in itertools.combinations(range(p), 2)]
    gamma = [_elementary(sq, j, p) for j in range(1, p)]
    gamma.append(math.prod((x - 1 for x in t), start=RatFunc.const(1, p)))
    order = math.factorial(p) * 2 ** (p - 1)
    return FiniteGroup(gens, p, order_hint=order) if gens else trivial_group(p), gamma


def build_torus(spec: TorusSpec, check: bool = True) -> TorusPreset:
    p = spec.rank()
    names = [f"t{i + 1}" for i in range(p)]
    G, gamma = _group_and_gamma(spec, p)
    M = ShiftMonoid.lattice([_sigma(i, p).shift for i in range(p)], p)
    setting = Setting(names, G, M, gamma, f"torus({spec.n},{spec.flavor})",
                      meta={"kind": "torus", "n": spec.n, "flavor": spec.flavor})
    one = RatFunc.const(1, p)
    gens: dict = {}
    for i in range(p):
        t = RatFunc.var(i, p)
        x = SkewElement._raw(setting, {_sigma(i, p): one})
        if spec.flavor.startswith("orthogonal"):
            d = SkewElement._raw(setting, {_sigma(i, p, -1): t, setting.identity(): one, _sigma(i, p, -2): -one})
        else:
            d = SkewElement._raw(setting, {_sigma(i, p, -1): t})
        gens[f"x{i + 1}"] = x
        gens[f"d{i + 1}"] = d
    if spec.flavor != "plain":
        gens["inv_x"] = make_invariant(setting, one, _sigma(0, p))
        if spec.flavor == "symmetric":
            gens["inv_d"] = make_invariant(setting, RatFunc.var(0, p), _sigma(0, p, -1))
        else:
            gens["inv_d"] = symmetrize(gens["d1"])
        for j, g in enumerate(gamma):
            gens[f"gamma{j + 1}"] = InvariantElement._raw(setting, SkewElement.scalar(setting, g).terms)
    if spec.flavor.startswith("orthogonal"):
        gens["eps"] = reflection(0, p)
    if check:
        for name, residual in torus_residuals(setting, gens, p):
            if not residual.is_zero():
                raise RelationFailed(name, residual)
        if spec.flavor != "plain":
            for name, g in gens.items():
                if isinstance(g, InvariantElement) and not is_invariant(g):
                    raise RelationFailed(f"{name} is G-invariant", g)
    return TorusPreset(setting, gens)


def conjugate_element(eps: AffineAut, x: SkewElement) -> SkewElement:
    """Image of ``x`` under the ring automorphism induced by ``eps``."""
    return x.act(eps)


def torus_residuals(setting: Setting, gens: dict, p: int) -> list:
    """Weyl relations, and the eps-twist identities when a reflection is present."""
    out = []
    one = SkewElement.scalar(setting, 1)
    zero = SkewElement.zero(setting)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            x, d = gens[f"x{j}"], gens[f"d{i}"]
            want = one if i == j else zero
            out.append((f"[d{i},x{j}]", skew_mul(d, x) - skew_mul(x, d) - want))
            if i < j:
                xi, dj = gens[f"x{i}"], gens[f"d{j}"]
                out.append((f"[x{i},x{j}]", skew_mul(xi, x) - skew_mul(x, xi)))
                out.append((f"[d{i},d{j}]", skew_mul(d, dj) - skew_mul(dj, d)))
    eps = gens.get("eps")
    if eps is not None:
        x, d = gens["x1"], gens["d1"]
        xinv = SkewElement._raw(setting, {_sigma(0, p, -1): RatFunc.const(1, p)})
        out.append(("eps(x)=x^-1", conjugate_element(eps, x) - xinv))
        out.append(("eps(D)=-x^2 D", conjugate_element(eps, d) + skew_mul(skew_mul(x, x), d)))
        out.append(("eps^2=id", conjugate_element(eps, conjugate_element(eps, d)) - d))
        t = setting.var(0)
        out.append(("eps(t)=2-t", SkewElement.scalar(setting, apply_automorphism(eps, t) - (2 - t))))
    return out
