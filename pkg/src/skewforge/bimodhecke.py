"""Double-coset combinatorics: simple bimodule classes, tensor products and Hecke products.

Classes are labeled by double cosets ``G phi G`` through their order-minimal
representative. ``|H_phi|`` always means the stabilizer of the embedding
``phi|_K``, namely ``G ∩ phi G phi^-1``; it is constant on the double coset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .autgroup import (
    AffineAut,
    DoubleCoset,
    FiniteGroup,
    aut_to_json,
    canonical_double_coset,
    compose_aut,
    embedding_stabilizer,
    g_equivalence_classes,
    stabilizer_and_orbit,
)
from .errors import NonIntegerMultiplicity, NotGInvariantFamily


@dataclass(frozen=True)
class SimpleClass:
    """The simple bimodule V(phi), keyed by its double coset."""

    coset: DoubleCoset

    @property
    def rep(self) -> AffineAut:
        return self.coset.rep

    def __lt__(self, other: "SimpleClass"):
        return self.coset.rep < other.coset.rep

    def __repr__(self):
        return f"V({self.coset.rep!r})"


def simple_class(G: FiniteGroup, phi: AffineAut) -> SimpleClass:
    return SimpleClass(canonical_double_coset(G, phi))


def class_dimension(c: SimpleClass) -> int:
    return c.coset.orbit_size


class ClassSum:
    """Formal sum of simple classes with positive integer multiplicities."""

    def __init__(self, G: FiniteGroup, terms: Mapping[SimpleClass, int] | None = None):
        self.group = G
        self.terms = {}
        for c, k in (terms or {}).items():
            if k:
                if k < 0 or int(k) != k:
                    raise NonIntegerMultiplicity(f"multiplicity {k} of {c!r} is not a positive integer")
                self.terms[c] = int(k)

    @classmethod
    def single(cls, G: FiniteGroup, phi: AffineAut, k: int = 1) -> "ClassSum":
        return cls(G, {simple_class(G, phi): k})

    def __add__(self, other: "ClassSum") -> "ClassSum":
        t = Counter(self.terms)
        t.update(other.terms)
        return ClassSum(self.group, dict(t))

    def dimension(self) -> int:
        return sum(k * class_dimension(c) for c, k in self.terms.items())

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: t[0].rep.key)

    def __eq__(self, other):
        if not isinstance(other, ClassSum):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"{k}*{c!r}" for c, k in self.sorted_terms()) or "0"


class HeckeElement:
    """Rational combination of double-coset sums ``b_phi``."""

    def __init__(self, G: FiniteGroup, terms: Mapping[DoubleCoset, Fraction] | None = None):
        self.group = G
        acc: dict = {}
        for dc, q in (terms or {}).items():
            q = Fraction(q)
            if q:
                acc[dc] = acc.get(dc, 0) + q
        self.terms = {dc: q for dc, q in acc.items() if q}

    @classmethod
    def basis(cls, G: FiniteGroup, phi: AffineAut, coeff=1) -> "HeckeElement":
        """``coeff * b_phi``."""
        return cls(G, {canonical_double_coset(G, phi): Fraction(coeff)})

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        t = dict(self.terms)
        for dc, q in other.terms.items():
            t[dc] = t.get(dc, 0) + q
        return HeckeElement(self.group, t)

    def scale(self, q) -> "HeckeElement":
        q = Fraction(q)
        return HeckeElement(self.group, {dc: c * q for dc, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: t[0].rep.key)

    def is_nonneg_integral(self) -> bool:
        return all(q >= 0 and q.denominator == 1 for q in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"{q}*b[{dc.rep!r}]" for dc, q in self.sorted_terms()) or "0"

    def to_json(self) -> list:
        return [{"rep": aut_to_json(dc.rep), "coeff": str(q)} for dc, q in self.sorted_terms()]


# ---------------------------------------------------------------- tensor products


def tensor_decompose(G: FiniteGroup, phi: SimpleClass, psi: SimpleClass) -> ClassSum:
    """``V(phi) (x)_K V(psi) = sum over classes c_g of V(phi g psi)^{s |c_g|}``."""
    a, b = phi.rep, psi.rep
    ha, hb = phi.coset.stab_order, psi.coset.stab_order
    out: dict = {}
    for cls in g_equivalence_classes(G, a, b):
        tau = compose_aut(compose_aut(a, cls[0]), b)
        dc = canonical_double_coset(G, tau)
        mult = Fraction(dc.stab_order, ha * hb) * len(cls)
        if mult.denominator != 1 or mult <= 0:
            raise NonIntegerMultiplicity(f"multiplicity {mult} for {tau!r}")
        c = SimpleClass(dc)
        out[c] = out.get(c, 0) + int(mult)
    return ClassSum(G, out)


def _left_coset_reps(G: FiniteGroup, H: Sequence[AffineAut]) -> list:
    seen = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        reps.append(g)
        for h in H:
            seen.add(compose_aut(g, h))
    return reps


def tensor_decompose_bruteforce(G: FiniteGroup, phi: AffineAut, psi: AffineAut) -> dict:
    """Reference sum over ``G/H_phi x G/H_psi`` of ``|H_{g phi g' psi}|/|G|``.

    Returns ``{DoubleCoset: Fraction}``; kept separate from the fast path.
    """
    Hp = embedding_stabilizer(G, phi)
    Hq = embedding_stabilizer(G, psi)
    out: dict = {}
    for g in _left_coset_reps(G, Hp):
        gp = compose_aut(g, phi)
        for g2 in _left_coset_reps(G, Hq):
            tau = compose_aut(compose_aut(gp, g2), psi)
            st = len(embedding_stabilizer(G, tau))
            dc = canonical_double_coset(G, tau)
            out[dc] = out.get(dc, 0) + Fraction(st, G.order)
    return out


def tensor_family(G: FiniteGroup, phi: AffineAut, psi: AffineAut) -> list:
    """The embeddings ``g phi g' psi`` indexing the summands of ``L (x) V(phi) (x) V(psi)``."""
    Hp = embedding_stabilizer(G, phi)
    Hq = embedding_stabilizer(G, psi)
    fam = []
    for g in _left_coset_reps(G, Hp):
        gp = compose_aut(g, phi)
        for g2 in _left_coset_reps(G, Hq):
            fam.append(compose_aut(compose_aut(gp, g2), psi))
    return fam


# ---------------------------------------------------------------- Hecke algebra


def hecke_mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """Bilinear extension of ``b_phi b_psi = |G|/(|H_phi||H_psi|) sum_g |H_{phi g psi}| b_{phi g psi}``."""
    G = x.group
    out: dict = {}
    n = G.order
    for dx, qx in x.terms.items():
        for dy, qy in y.terms.items():
            pref = qx * qy * Fraction(n, dx.stab_order * dy.stab_order)
            for g in G.elements:
                tau = compose_aut(compose_aut(dx.rep, g), dy.rep)
                dc = canonical_double_coset(G, tau)
                out[dc] = out.get(dc, 0) + pref * dc.stab_order
    return HeckeElement(G, out)


def group_algebra_sum(G: FiniteGroup, phi: AffineAut) -> Counter:
    """``b_phi`` as an element of Z[Aut L]: each member of ``G phi G`` once."""
    members = set()
    for g1 in G.elements:
        a = compose_aut(g1, phi)
        for g2 in G.elements:
            members.add(compose_aut(a, g2))
    return Counter({m: 1 for m in members})


def hecke_mul_bruteforce(G: FiniteGroup, phi: AffineAut, psi: AffineAut) -> HeckeElement:
    """``b_phi b_psi`` multiplied out in the group algebra, then read off in the b-basis."""
    A = group_algebra_sum(G, phi)
    B = group_algebra_sum(G, psi)
    prod: Counter = Counter()
    for a, ca in A.items():
        for b, cb in B.items():
            prod[compose_aut(a, b)] += ca * cb
    out = {}
    done = set()
    for m in sorted(prod):
        dc = canonical_double_coset(G, m)
        if dc.rep in done:
            continue
        done.add(dc.rep)
        out[dc] = Fraction(prod[dc.rep])
    return HeckeElement(G, out)


def grothendieck_to_hecke(x: ClassSum) -> HeckeElement:
    """``[V(phi)] -> (1/|G|) b_phi``, extended linearly."""
    G = x.group
    return HeckeElement(G, {c.coset: Fraction(k, G.order) for c, k in x.terms.items()})


# ---------------------------------------------------------------- multiplicities


def _embedding_key(G: FiniteGroup, tau: AffineAut) -> AffineAut:
    """Canonical member of the coset ``tau G`` (the embedding ``tau|_K``)."""
    return min(compose_aut(tau, g) for g in G.elements)


def multiplicity_from_family(G: FiniteGroup, family: Sequence[AffineAut], phi: AffineAut) -> Fraction:
    """Multiplicity of ``V(phi)`` in a bimodule whose summands are indexed by ``family``.

    Members are read as embeddings ``tau|_K``; the multiset must be stable
    under left multiplication by G.
    """
    keys = Counter(_embedding_key(G, t) for t in family)
    for g in G.generators:
        moved = Counter()
        for k, c in keys.items():
            moved[_embedding_key(G, compose_aut(g, k))] += c
        if moved != keys:
            raise NotGInvariantFamily("family is not stable under G")
    target = canonical_double_coset(G, phi)
    count = sum(1 for t in family if canonical_double_coset(G, t).rep == target.rep)
    return Fraction(count * target.stab_order, G.order)


# ---------------------------------------------------------------- tables and finite monoids


def structure_table(G: FiniteGroup, pool: Sequence[AffineAut]) -> dict:
    """``(1/|G|) b_phi b_psi`` for every ordered pair of the pool."""
    reps = []
    for p in pool:
        r = canonical_double_coset(G, p).rep
        if r not in reps:
            reps.append(r)
    reps.sort()
    rows = {}
    for a in reps:
        for b in reps:
            rows[(a, b)] = hecke_mul(HeckeElement.basis(G, a), HeckeElement.basis(G, b)).scale(Fraction(1, G.order))
    return {"reps": reps, "entries": rows}


def structure_table_text(G: FiniteGroup, pool: Sequence[AffineAut], show=repr) -> str:
    t = structure_table(G, pool)
    reps = t["reps"]
    names = [show(r) for r in reps]
    lines = []
    for a, na in zip(reps, names):
        for b, nb in zip(reps, names):
            h = t["entries"][(a, b)]
            body = " + ".join(f"{q}*b[{show(dc.rep)}]" for dc, q in h.sorted_terms()) or "0"
            lines.append(f"{na} x {nb} = {body}")
    return "\n".join(lines)


def structure_table_json(G: FiniteGroup, pool: Sequence[AffineAut]) -> dict:
    t = structure_table(G, pool)
    return {
        "reps": [aut_to_json(r) for r in t["reps"]],
        "entries": [
            {"left": aut_to_json(a), "right": aut_to_json(b), "product": h.to_json()}
            for (a, b), h in t["entries"].items()
        ],
    }


def monoid_classes(G: FiniteGroup, elements: Iterable[AffineAut]) -> list:
    """One simple class per G-conjugation orbit of ``elements``, in orbit-rep order."""
    left = set(elements)
    out = []
    while left:
        m = min(left)
        left -= set(stabilizer_and_orbit(G, m).orbit)
        out.append(simple_class(G, m))
    return out


def finite_monoid_dimension_sum(setting) -> tuple:
    """``(sum of class dimensions over M/G, |M|)`` for a finite monoid."""
    M = setting.monoid
    if M.kind != "finite":
        raise ValueError("monoid is not finite")
    classes = monoid_classes(setting.group, M.elements_list)
    return sum(class_dimension(c) for c in classes), len(M.elements_list)


__all__ = [
    "ClassSum",
    "HeckeElement",
    "SimpleClass",
    "class_dimension",
    "finite_monoid_dimension_sum",
    "grothendieck_to_hecke",
    "group_algebra_sum",
    "hecke_mul",
    "hecke_mul_bruteforce",
    "monoid_classes",
    "multiplicity_from_family",
    "simple_class",
    "structure_table",
    "structure_table_json",
    "structure_table_text",
    "tensor_decompose",
    "tensor_decompose_bruteforce",
    "tensor_family",
]
