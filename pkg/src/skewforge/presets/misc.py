"""Small example settings, tensor products of settings and GK arithmetic."""

from __future__ import annotations

from ..arith import Poly, RatFunc
from ..autgroup import AffineAut, FiniteGroup, ShiftMonoid, trivial_group
from ..errors import UnsupportedSetting
from ..skewring import InvariantElement, Setting, SkewElement, Variable


def build_s2() -> Setting:
    """``Q(x1, x2)`` with ``S_2`` swapping the variables and the full shift lattice."""
    x1, x2 = RatFunc.var(0, 2), RatFunc.var(1, 2)
    G = FiniteGroup([AffineAut.transposition(0, 1, 2)], 2, order_hint=2)
    M = ShiftMonoid.lattice([[1, 0], [0, 1]], 2)
    return Setting(["x1", "x2"], G, M, [x1 + x2, x1 * x2], "s2", meta={"kind": "s2"})


def sign_flip(n: int = 2) -> AffineAut:
    return AffineAut(list(range(n)), [-1] * n, [0] * n)


def build_finite() -> Setting:
    """``Q(x, y)`` with the swap and the finite monoid ``{e, (x, y) -> (-x, -y)}``."""
    x, y = RatFunc.var(0, 2), RatFunc.var(1, 2)
    G = FiniteGroup([AffineAut.transposition(0, 1, 2)], 2, order_hint=2)
    M = ShiftMonoid.finite([sign_flip(2)], 2)
    return Setting(["x", "y"], G, M, [x + y, x * y], "finite", meta={"kind": "finite"})


def build_skewpoly() -> Setting:
    """``Q(t)`` with the monoid ``N`` generated by ``t -> t + 1``."""
    t = RatFunc.var(0, 1)
    M = ShiftMonoid.monoid([AffineAut.from_shift([1])], 1)
    return Setting(["t"], trivial_group(1), M, [t], "skewpoly", meta={"kind": "skewpoly"})


# ---------------------------------------------------------------- tensor products


def _embed_aut(a: AffineAut, offset: int, total: int) -> AffineAut:
    n = a.nvars
    perm = list(range(total))
    scale = [1] * total
    shift = [0] * total
    for v in range(n):
        perm[offset + v] = offset + a.perm[v]
        scale[offset + v] = a.scale[v]
        shift[offset + v] = a.shift[v]
    return AffineAut(perm, scale, shift)


def _embed_poly(p: Poly, offset: int, total: int) -> dict:
    pre = (0,) * offset
    post = (0,) * (total - offset - p.nvars)
    return {pre + e + post: c for e, c in p.terms.items()}


def _embed_ratfunc(f: RatFunc, offset: int, total: int) -> RatFunc:
    return RatFunc._raw(_embed_poly(f.num, offset, total), _embed_poly(f.den, offset, total), total)


def _product_monoid(M1: ShiftMonoid, M2: ShiftMonoid, n1: int, total: int) -> ShiftMonoid:
    if M1.kind == "lattice" and M2.kind == "lattice":
        basis = [list(v) + [0] * (total - n1) for v in M1.basis]
        basis += [[0] * n1 + list(v) for v in M2.basis]
        return ShiftMonoid.lattice(basis, total)
    if M1.kind == "finite" and M2.kind == "finite":
        els = [_embed_aut(a, 0, total) @ _embed_aut(b, n1, total) for a in M1.elements_list for b in M2.elements_list]
        return ShiftMonoid.finite(els, total)
    if "finite" in (M1.kind, M2.kind):
        raise UnsupportedSetting("cannot combine a finite monoid with an infinite one")
    gens = [_embed_aut(g, 0, total) for g in M1.semigroup_generators()]
    gens += [_embed_aut(g, n1, total) for g in M2.semigroup_generators()]
    return ShiftMonoid.monoid(gens, total)


def tensor_product_rings(s1: Setting, s2: Setting) -> Setting:
    """Setting for the tensor product; clashing variable names get ``_1``/``_2`` suffixes."""
    n1, n2 = s1.nvars, s2.nvars
    total = n1 + n2
    names1, names2 = list(s1.names), list(s2.names)
    if set(names1) & set(names2):
        names1 = [f"{x}_1" for x in names1]
        names2 = [f"{x}_2" for x in names2]
    variables = [Variable(i, nm, v.row) for i, (nm, v) in enumerate(zip(names1, s1.variables))]
    variables += [Variable(n1 + i, nm, v.row) for i, (nm, v) in enumerate(zip(names2, s2.variables))]
    gens = [_embed_aut(g, 0, total) for g in s1.group.generators]
    gens += [_embed_aut(g, n1, total) for g in s2.group.generators]
    G = FiniteGroup(gens, total, order_hint=s1.group.order * s2.group.order)
    M = _product_monoid(s1.monoid, s2.monoid, n1, total)
    gamma = [_embed_ratfunc(g, 0, total) for g in s1.gamma_gens]
    gamma += [_embed_ratfunc(g, n1, total) for g in s2.gamma_gens]
    meta = {"kind": "tensor", "offset": n1, "factors": (s1, s2)}
    return Setting(variables, G, M, gamma, f"tensor({s1.label},{s2.label})", meta=meta)


def _factor(product: Setting, which: int):
    if product.meta.get("kind") != "tensor":
        raise UnsupportedSetting("not a tensor-product setting")
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    offset = 0 if which == 1 else product.meta["offset"]
    return product.meta["factors"][which - 1], offset


def lift_ratfunc(product: Setting, which: int, f: RatFunc) -> RatFunc:
    src, offset = _factor(product, which)
    return _embed_ratfunc(f.with_nvars(src.nvars), offset, product.nvars)


def lift_aut(product: Setting, which: int, a: AffineAut) -> AffineAut:
    _, offset = _factor(product, which)
    return _embed_aut(a, offset, product.nvars)


def lift_element(product: Setting, which: int, x: SkewElement) -> SkewElement:
    src, offset = _factor(product, which)
    terms = {_embed_aut(m, offset, product.nvars): _embed_ratfunc(c, offset, product.nvars)
             for m, c in x.terms.items()}
    cls = InvariantElement if isinstance(x, InvariantElement) else SkewElement
    return cls._raw(product, terms)


# ---------------------------------------------------------------- GK dimension


def gk_bound(setting: Setting) -> tuple:
    """``(gkdim Gamma, growth of M, sum)`` for a polynomial Gamma and a lattice M.

    Gamma is taken to be a polynomial ring in as many variables as L has, and
    a lattice of rank r has polynomial growth of degree r.
    """
    M = setting.monoid
    if M.kind != "lattice":
        raise UnsupportedSetting(f"growth is only computed for lattices, not {M.kind} monoids")
    if not all(g.is_polynomial() for g in setting.gamma_gens):
        raise UnsupportedSetting("Gamma-generators must be polynomials")
    gk = setting.nvars
    return gk, M.rank, gk + M.rank
