"""Affine automorphisms of L, finite groups of them, and shift monoids.

An :class:`AffineAut` sends ``x_v`` to ``scale[v] * x_{perm[v]} + shift[v]``.
Composition follows function composition, ``compose(a, b)(f) = a(b(f))``,
and conjugation is ``phi^g = g o phi o g^-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith.poly import _nc
from .arith.ratfunc import RatFunc
from .errors import (
    ClosureCapExceeded,
    SettingMismatch,
    UnknownVariable,
    UnsupportedMonoid,
)


def _q(x):
    return _nc(Fraction(x))


class AffineAut:
    """Normal form of an affine automorphism of Q(x_0, ..., x_{n-1})."""

    __slots__ = ("perm", "scale", "shift", "_key", "_hash")

    def __init__(self, perm: Sequence[int], scale: Sequence | None = None, shift: Sequence | None = None):
        perm = tuple(int(p) for p in perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
        scale = tuple(_q(s) for s in scale) if scale is not None else (1,) * n
        shift = tuple(_q(s) for s in shift) if shift is not None else (0,) * n
        if len(scale) != n or len(shift) != n:
            raise ValueError("perm, scale and shift must have equal length")
        if any(s == 0 for s in scale):
            raise ValueError("scale entries must be nonzero")
        self.perm = perm
        self.scale = scale
        self.shift = shift
        self._key = (perm, scale, shift)
        self._hash = hash(self._key)

    @classmethod
    def _raw(cls, perm, scale, shift) -> "AffineAut":
        a = object.__new__(cls)
        a.perm, a.scale, a.shift = perm, scale, shift
        a._key = (perm, scale, shift)
        a._hash = hash(a._key)
        return a

    # constructors
    @classmethod
    def identity(cls, n: int) -> "AffineAut":
        return cls._raw(tuple(range(n)), (1,) * n, (0,) * n)

    @classmethod
    def from_shift(cls, vec: Sequence) -> "AffineAut":
        n = len(vec)
        return cls._raw(tuple(range(n)), (1,) * n, tuple(_q(v) for v in vec))

    @classmethod
    def from_perm(cls, perm: Sequence[int]) -> "AffineAut":
        return cls(perm)

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "AffineAut":
        p = list(range(n))
        p[i], p[j] = p[j], p[i]
        return cls(p)

    @property
    def nvars(self) -> int:
        return len(self.perm)

    @property
    def key(self):
        return self._key

    def is_identity(self) -> bool:
        return (
            all(p == i for i, p in enumerate(self.perm))
            and all(s == 1 for s in self.scale)
            and not any(self.shift)
        )

    def is_pure_shift(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm)) and all(s == 1 for s in self.scale)

    def shift_vector(self) -> tuple:
        if not self.is_pure_shift():
            raise ValueError("not a pure shift")
        return self.shift

    # group operations
    def __matmul__(self, other: "AffineAut") -> "AffineAut":
        return compose_aut(self, other)

    def inverse(self) -> "AffineAut":
        return invert_aut(self)

    def __call__(self, f: RatFunc) -> RatFunc:
        return apply_automorphism(self, f)

    # ordering and equality
    def __eq__(self, other):
        if not isinstance(other, AffineAut):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other: "AffineAut"):
        return self._key < other._key

    def __le__(self, other: "AffineAut"):
        return self._key <= other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_pure_shift():
            return f"shift{tuple(str(s) for s in self.shift)}".replace("'", "")
        return f"AffineAut(perm={list(self.perm)}, scale={[str(s) for s in self.scale]}, shift={[str(s) for s in self.shift]})".replace("'", "")


def _check_same(a: AffineAut, b: AffineAut):
    if a.nvars != b.nvars:
        raise SettingMismatch(f"automorphisms act on {a.nvars} and {b.nvars} variables")


def compose_aut(a: AffineAut, b: AffineAut) -> AffineAut:
    """``a o b``: first apply ``b``, then ``a``."""
    _check_same(a, b)
    ap, as_, at = a.perm, a.scale, a.shift
    bp, bs, bt = b.perm, b.scale, b.shift
    perm = tuple(ap[p] for p in bp)
    scale = tuple(_nc(bs[v] * as_[bp[v]]) if bs[v] != 1 or as_[bp[v]] != 1 else 1 for v in range(len(bp)))
    shift = tuple(
        _nc(bs[v] * at[bp[v]] + bt[v]) if at[bp[v]] or bt[v] else 0 for v in range(len(bp))
    )
    return AffineAut._raw(perm, scale, shift)


def invert_aut(a: AffineAut) -> AffineAut:
    n = a.nvars
    perm = [0] * n
    scale = [1] * n
    shift = [0] * n
    for v in range(n):
        w = a.perm[v]
        perm[w] = v
        s = a.scale[v]
        scale[w] = _nc(Fraction(1) / s) if s != 1 else 1
        shift[w] = _nc(Fraction(-a.shift[v]) / s) if a.shift[v] else 0
    return AffineAut._raw(tuple(perm), tuple(scale), tuple(shift))


def apply_automorphism(phi: AffineAut, f: RatFunc) -> RatFunc:
    """Substitute ``x_v -> scale[v] x_{perm[v]} + shift[v]`` into ``f``."""
    if f.nvars > phi.nvars:
        used = f.variables()
        if any(v >= phi.nvars for v in used):
            raise UnknownVariable(f"variable outside the automorphism's {phi.nvars} variables")
        f = f.with_nvars(phi.nvars)
    elif f.nvars < phi.nvars:
        f = f.with_nvars(phi.nvars)
    if phi.is_identity():
        return f
    return f.substitute_affine(phi.perm, phi.scale, phi.shift)


def conjugate(g: AffineAut, phi: AffineAut) -> AffineAut:
    """``phi^g = g o phi o g^-1``."""
    return compose_aut(compose_aut(g, phi), invert_aut(g))


# ---------------------------------------------------------------- groups


class FiniteGroup:
    """Finite group of affine automorphisms, closed lazily from generators.

    ``order_hint`` answers ``order`` without forcing the closure, which
    matters for large presets that only need the group order.
    """

    def __init__(self, generators: Sequence[AffineAut], nvars: int, cap: int = 100000,
                 elements: Sequence[AffineAut] | None = None, order_hint: int | None = None):
        self.nvars = nvars
        self.generators = tuple(g for g in generators if not g.is_identity())
        for g in self.generators:
            if g.nvars != nvars:
                raise SettingMismatch("generator acts on the wrong number of variables")
        self.cap = cap
        self._elements = tuple(elements) if elements is not None else None
        self._set = frozenset(self._elements) if self._elements is not None else None
        self._order_hint = order_hint
        self._dc_cache: dict = {}

    @property
    def elements(self) -> tuple:
        if self._elements is None:
            self._elements = _closure(self.generators, self.nvars, self.cap)
            self._set = frozenset(self._elements)
        return self._elements

    @property
    def order(self) -> int:
        if self._elements is None and self._order_hint is not None:
            return self._order_hint
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a: AffineAut) -> bool:
        self.elements
        return a in self._set

    def is_trivial(self) -> bool:
        return not self.generators

    def identity(self) -> AffineAut:
        return AffineAut.identity(self.nvars)


def _closure(gens: Sequence[AffineAut], n: int, cap: int) -> tuple:
    e = AffineAut.identity(n)
    seen = {e}
    order = [e]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for g in gens:
            y = compose_aut(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > cap:
                    raise ClosureCapExceeded(f"group closure exceeded {cap} elements")
    return tuple(order)


def group_closure(gens: Sequence[AffineAut], cap: int = 100000) -> FiniteGroup:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not gens:
        raise ValueError("need at least one generator to fix the variable count")
    n = gens[0].nvars
    G = FiniteGroup(gens, n, cap)
    G.elements
    return G


def trivial_group(n: int) -> FiniteGroup:
    return FiniteGroup((), n, elements=(AffineAut.identity(n),))


# ---------------------------------------------------------------- monoids


def _solve_rational(rows: list, target: list):
    """Solve ``sum c_i rows[i] = target`` over Q; ``None`` if inconsistent."""
    k = len(rows)
    n = len(target)
    # columns = basis vectors; augmented matrix n x (k+1)
    M = [[Fraction(rows[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if M[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = M[i][k]
    return sol


class ShiftMonoid:
    """The monoid of shifts, in one of three shapes.

    * ``lattice``: the group spanned over Z by linearly independent shift vectors;
    * ``monoid``: the monoid generated by finitely many pure shifts;
    * ``finite``: an explicit finite monoid of affine automorphisms.
    """

    KINDS = ("lattice", "monoid", "finite")

    def __init__(self, kind: str, nvars: int, basis: Sequence[Sequence] = (),
                 generators: Sequence[AffineAut] = (), elements: Sequence[AffineAut] = ()):
        if kind not in self.KINDS:
            raise UnsupportedMonoid(f"unknown monoid kind {kind!r}")
        self.kind = kind
        self.nvars = nvars
        self.basis = tuple(tuple(_q(x) for x in v) for v in basis)
        if kind == "lattice":
            for v in self.basis:
                if len(v) != nvars:
                    raise SettingMismatch("basis vector has wrong length")
            if _rank(self.basis) != len(self.basis):
                raise ValueError("lattice basis must be linearly independent")
            self.gens = tuple(AffineAut.from_shift(v) for v in self.basis)
        elif kind == "monoid":
            for g in generators:
                if not g.is_pure_shift() or g.nvars != nvars:
                    raise UnsupportedMonoid("monoid generators must be pure shifts")
            self.gens = tuple(generators)
        else:
            els = list(dict.fromkeys(elements))
            e = AffineAut.identity(nvars)
            if e not in els:
                els.insert(0, e)
            s = set(els)
            for a in els:
                for b in els:
                    if compose_aut(a, b) not in s:
                        raise UnsupportedMonoid("finite monoid is not closed under composition")
            self.elements_list = tuple(sorted(els))
            self.gens = tuple(a for a in self.elements_list if not a.is_identity())

    # construction helpers
    @classmethod
    def lattice(cls, basis: Sequence[Sequence], nvars: int | None = None) -> "ShiftMonoid":
        if nvars is None:
            nvars = len(basis[0]) if basis else 0
        return cls("lattice", nvars, basis=basis)

    @classmethod
    def monoid(cls, generators: Sequence[AffineAut], nvars: int) -> "ShiftMonoid":
        return cls("monoid", nvars, generators=generators)

    @classmethod
    def finite(cls, elements: Sequence[AffineAut], nvars: int) -> "ShiftMonoid":
        return cls("finite", nvars, elements=elements)

    @property
    def rank(self) -> int:
        if self.kind == "lattice":
            return len(self.basis)
        if self.kind == "monoid":
            return _rank([g.shift for g in self.gens])
        return 0

    def is_group(self) -> bool:
        if self.kind == "lattice":
            return True
        if self.kind == "finite":
            s = set(self.elements_list)
            return all(invert_aut(a) in s for a in self.elements_list)
        return False

    def is_finite(self) -> bool:
        return self.kind == "finite" or (self.kind == "lattice" and not self.basis) or (
            self.kind == "monoid" and not self.gens)

    def generators(self) -> tuple:
        return self.gens

    def semigroup_generators(self) -> tuple:
        """Generators as a semigroup (adds inverses for lattices)."""
        if self.kind == "lattice":
            return self.gens + tuple(invert_aut(g) for g in self.gens)
        return self.gens

    def coordinates(self, m: AffineAut):
        """Lattice coordinates of ``m`` over the basis, or ``None``."""
        if not m.is_pure_shift() or m.nvars != self.nvars:
            return None
        if not self.basis:
            return () if not any(m.shift) else None
        sol = _solve_rational(list(self.basis), list(m.shift))
        if sol is None:
            return None
        return tuple(sol)

    def __contains__(self, m: AffineAut) -> bool:
        return self.contains(m)

    def contains(self, m: AffineAut, bound: int = 40) -> bool:
        if m.nvars != self.nvars:
            return False
        if self.kind == "finite":
            return m in set(self.elements_list)
        if self.kind == "lattice":
            c = self.coordinates(m)
            return c is not None and all(x.denominator == 1 for x in c)
        if m.is_identity():
            return True
        if not m.is_pure_shift():
            return False
        return _monoid_member([g.shift for g in self.gens], m.shift, bound)

    def from_coordinates(self, coords: Sequence[int]) -> AffineAut:
        vec = [0] * self.nvars
        for c, b in zip(coords, self.basis):
            for i, x in enumerate(b):
                vec[i] += c * x
        return AffineAut.from_shift(vec)

    def ball(self, radius: int) -> list:
        """Elements within ``radius``: lattice coordinates bounded by it, or words of that length."""
        e = AffineAut.identity(self.nvars)
        if self.kind == "finite":
            return list(self.elements_list)
        if self.kind == "lattice":
            out = []
            for c in itertools.product(range(-radius, radius + 1), repeat=len(self.basis)):
                out.append(self.from_coordinates(c))
            return out
        seen = {e}
        frontier = [e]
        for _ in range(radius):
            nxt = []
            for a in frontier:
                for g in self.gens:
                    b = compose_aut(g, a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(seen)

    def to_json(self) -> dict:
        if self.kind == "lattice":
            return {"kind": "lattice", "basis": [[str(x) for x in v] for v in self.basis]}
        if self.kind == "monoid":
            return {"kind": "monoid", "generators": [aut_to_json(g) for g in self.gens]}
        return {"kind": "finite", "elements": [aut_to_json(a) for a in self.elements_list]}


def _rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncol = len(rows[0])
    for c in range(ncol):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _monoid_member(gens, target, bound: int) -> bool:
    """Bounded search: is ``target`` a sum of at most ``bound`` generators?"""
    target = tuple(Fraction(x) for x in target)
    zero = tuple(Fraction(0) for _ in target)
    level = {zero}
    seen = {zero}
    for _ in range(bound):
        nxt = set()
        for v in level:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if w == target:
                    return True
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        level = nxt
        if not level:
            break
    return False


# ---------------------------------------------------------------- orbits and cosets


@dataclass(frozen=True)
class DoubleCoset:
    """A double coset G phi G with its order-minimal representative.

    ``stab_order`` is ``|G ∩ rep G rep^-1|``, the stabilizer of the embedding
    attached to ``rep``; ``orbit_size`` is ``|G| / stab_order``.
    """

    rep: AffineAut
    stab_order: int
    orbit_size: int

    def __lt__(self, other: "DoubleCoset"):
        return self.rep < other.rep


@dataclass
class StabilizerOrbit:
    stabilizer: FiniteGroup
    orbit: list
    coset_reps: list

    def __iter__(self):
        return iter((self.stabilizer, self.orbit, self.coset_reps))


def stabilizer_and_orbit(G: FiniteGroup, phi: AffineAut) -> StabilizerOrbit:
    """Centralizer ``H_phi``, conjugation orbit and one representative per coset of ``G/H_phi``."""
    H = []
    orbit = []
    reps = []
    seen = set()
    for g in G.elements:
        c = conjugate(g, phi)
        if c == phi:
            H.append(g)
        if c not in seen:
            seen.add(c)
            orbit.append(c)
            reps.append(g)
    return StabilizerOrbit(FiniteGroup([h for h in H if not h.is_identity()], G.nvars, elements=H), orbit, reps)


def embedding_stabilizer(G: FiniteGroup, phi: AffineAut) -> list:
    """``{h in G : phi^-1 o h o phi in G}``."""
    inv = invert_aut(phi)
    return [h for h in G.elements if compose_aut(compose_aut(inv, h), phi) in G]


def double_coset_elements(G: FiniteGroup, phi: AffineAut) -> set:
    out = set()
    for g1 in G.elements:
        a = compose_aut(g1, phi)
        for g2 in G.elements:
            out.add(compose_aut(a, g2))
    return out


def canonical_double_coset(G: FiniteGroup, phi: AffineAut) -> DoubleCoset:
    cache = G._dc_cache
    hit = cache.get(phi)
    if hit is not None:
        return hit
    members = double_coset_elements(G, phi)
    rep = min(members)
    hit = cache.get(rep)
    if hit is None:
        st = len(embedding_stabilizer(G, rep))
        hit = DoubleCoset(rep, st, G.order // st)
        cache[rep] = hit
    for m in members:
        cache[m] = hit
    return hit


def double_coset_equal(G: FiniteGroup, phi: AffineAut, psi: AffineAut) -> bool:
    return psi in double_coset_elements(G, phi)


def g_equivalence_classes(G: FiniteGroup, phi: AffineAut, psi: AffineAut) -> list:
    """Partition of ``G`` by the double coset of ``phi o g o psi``."""
    classes: dict = {}
    for g in G.elements:
        key = canonical_double_coset(G, compose_aut(compose_aut(phi, g), psi)).rep
        classes.setdefault(key, []).append(g)
    return list(classes.values())


# ---------------------------------------------------------------- separation


def restriction_equal_on_K(setting, m1: AffineAut, m2: AffineAut) -> bool:
    """Do ``m1`` and ``m2`` agree on every Gamma-generator of the setting?"""
    return all(apply_automorphism(m1, g) == apply_automorphism(m2, g) for g in setting.gamma_gens)


@dataclass(frozen=True)
class SeparationResult:
    status: bool | None
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.status is True


def _fixes_gamma(setting, m: AffineAut) -> bool:
    return all(apply_automorphism(m, g) == g for g in setting.gamma_gens)


BOX_CAP = 4000


def _difference_vectors(r: int, rank: int):
    """Nonzero vectors of the box ``[-r, r]^rank``; above BOX_CAP only those with at most two nonzero entries."""
    rng = range(-r, r + 1)
    if (2 * r + 1) ** rank <= BOX_CAP:
        for c in itertools.product(rng, repeat=rank):
            if any(c):
                yield c
        return
    for i in range(rank):
        for a in rng:
            if a:
                v = [0] * rank
                v[i] = a
                yield tuple(v)
    for i, j in itertools.combinations(range(rank), 2):
        for a in rng:
            for b in rng:
                if a and b:
                    v = [0] * rank
                    v[i], v[j] = a, b
                    yield tuple(v)


def is_separating(setting, M: ShiftMonoid, G: FiniteGroup, ball: int = 1) -> SeparationResult:
    """Three-valued separation test; ``status`` is True, False or None (unknown)."""
    if ball < 1:
        raise ValueError("ball must be at least 1")
    e = AffineAut.identity(M.nvars)
    if M.kind == "finite":
        for m in M.elements_list:
            if not m.is_identity() and m in G:
                return SeparationResult(False, (m, e), "monoid meets the group")
        els = M.elements_list
        for a, b in itertools.combinations(els, 2):
            if restriction_equal_on_K(setting, a, b):
                return SeparationResult(False, (a, b), "equal restrictions")
        return SeparationResult(True, None, "decided over all pairs")
    if M.kind == "lattice":
        # differences of elements in the radius-ball lie in the doubled ball
        for c in _difference_vectors(2 * ball, len(M.basis)):
            d = M.from_coordinates(c)
            if _fixes_gamma(setting, d):
                half = [x // 2 for x in c]
                m1 = M.from_coordinates([x - h for x, h in zip(c, half)])
                m2 = M.from_coordinates([-h for h in half])
                return SeparationResult(False, (m1, m2), "equal restrictions")
        for g in M.gens:
            if _fixes_gamma(setting, g):
                return SeparationResult(False, (g, e), "generator fixes K")
        return SeparationResult(True, None, "pure shifts meet G trivially; generators move Gamma")
    elems = M.ball(ball)
    for a, b in itertools.combinations(elems, 2):
        if restriction_equal_on_K(setting, a, b):
            return SeparationResult(False, (a, b), "equal restrictions")
    return SeparationResult(None, None, "no witness in the ball")


def normalizes_check(G: FiniteGroup, M: ShiftMonoid) -> bool:
    """Does conjugation by ``G`` preserve ``M``? Checking generators of both suffices."""
    gens = G.generators
    if M.kind == "finite":
        s = set(M.elements_list)
        return all(conjugate(g, m) in s for g in gens for m in M.elements_list)
    return all(M.contains(conjugate(g, m)) for g in gens for m in M.gens)


# ---------------------------------------------------------------- JSON


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def aut_to_json(a: AffineAut) -> dict:
    return {
        "perm": list(a.perm),
        "scale": [_fmt(s) for s in a.scale],
        "shift": [_fmt(s) for s in a.shift],
    }


def aut_from_json(data: dict) -> AffineAut:
    return AffineAut(
        data["perm"],
        [Fraction(s) for s in data["scale"]],
        [Fraction(s) for s in data["shift"]],
    )


def coerce_auts(items: Iterable) -> list:
    return [a if isinstance(a, AffineAut) else aut_from_json(a) for a in items]


__all__ = [
    "AffineAut",
    "DoubleCoset",
    "FiniteGroup",
    "SeparationResult",
    "ShiftMonoid",
    "StabilizerOrbit",
    "apply_automorphism",
    "aut_from_json",
    "aut_to_json",
    "canonical_double_coset",
    "compose_aut",
    "conjugate",
    "double_coset_elements",
    "double_coset_equal",
    "embedding_stabilizer",
    "g_equivalence_classes",
    "group_closure",
    "invert_aut",
    "is_separating",
    "normalizes_check",
    "restriction_equal_on_K",
    "stabilizer_and_orbit",
    "trivial_group",
]
