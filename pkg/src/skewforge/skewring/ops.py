"""Structural operations on invariant elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..arith import RatFunc
from ..autgroup import (
    AffineAut,
    apply_automorphism,
    canonical_double_coset,
    compose_aut,
    conjugate,
    invert_aut,
)
from ..errors import (
    EmptySupport,
    NotGammaElement,
    ProjectionSearchFailed,
    UnsupportedMonoid,
    ZeroElement,
)
from .element import InvariantElement, SkewElement, is_invariant, skew_mul
from .setting import Setting

SEARCH_CAP = 100


def _require_gamma(setting: Setting, f: RatFunc):
    if not setting.is_gamma(f):
        raise NotGammaElement(f"{setting.show(f)} is not a G-invariant polynomial")


def invariant_mul(x: InvariantElement, gamma: RatFunc, y: InvariantElement) -> InvariantElement:
    """``x * (gamma e) * y`` for ``gamma`` in Gamma."""
    s = x.setting
    _require_gamma(s, gamma)
    g = InvariantElement._raw(s, SkewElement.scalar(s, gamma).terms)
    return skew_mul(skew_mul(x, g), y)


def restrict_support(x: SkewElement, S: Iterable[AffineAut]) -> SkewElement:
    S = set(S)
    terms = {m: c for m, c in x.terms.items() if m in S}
    if isinstance(x, InvariantElement) and is_invariant(SkewElement._raw(x.setting, terms)):
        return InvariantElement._raw(x.setting, terms)
    return SkewElement._raw(x.setting, terms)


def gamma_candidates(setting: Setting, limit: int = SEARCH_CAP):
    """Gamma-generators, then small integer combinations and pairwise products."""
    gens = list(setting.gamma_gens)
    seen = 0
    for g in gens:
        yield g
        seen += 1
    for k in (2, 3):
        for combo in itertools.combinations(range(len(gens)), k):
            for coeffs in itertools.product((1, 2, -1), repeat=k):
                if seen >= limit:
                    return
                yield sum((c * gens[i] for c, i in zip(coeffs, combo)), RatFunc.const(0, setting.nvars))
                seen += 1
    for i, j in itertools.combinations_with_replacement(range(len(gens)), 2):
        if seen >= limit:
            return
        yield gens[i] * gens[j] + gens[i]
        seen += 1


def apply_f_operator(x: SkewElement, T: Iterable[AffineAut], f: RatFunc) -> SkewElement:
    """``u -> prod_{s in T} (f u - u f^{s^-1})`` through ring products."""
    s = x.setting
    fe = SkewElement.scalar(s, f)
    u = x.as_skew()
    for t in sorted(T, key=lambda a: a.key):
        fs = SkewElement.scalar(s, apply_automorphism(invert_aut(t), f))
        u = skew_mul(fe, u) - skew_mul(u, fs)
    return u


def _separates(f: RatFunc, S, T) -> bool:
    for m in S:
        for t in T:
            if apply_automorphism(compose_aut(m, invert_aut(t)), f) == f:
                return False
    return True


def project_component(x: InvariantElement, S: Iterable[AffineAut], f: RatFunc | None = None) -> InvariantElement:
    """Kill the terms outside ``S`` with the bimodule operator ``f_{supp x - S}``.

    With ``f=None`` a Gamma element is searched so that no term inside ``S`` dies.
    """
    setting = x.setting
    S = set(S)
    T = set(x.terms) - S
    if f is None:
        keep = S & set(x.terms)
        for cand in gamma_candidates(setting):
            if _separates(cand, keep, T):
                f = cand
                break
        else:
            raise ProjectionSearchFailed(f"no separating Gamma element among {SEARCH_CAP} candidates")
    else:
        _require_gamma(setting, f)
    u = apply_f_operator(x, T, f)
    out = InvariantElement._raw(setting, u.terms)
    assert is_invariant(out), "projection lost invariance"
    return out


def orbit_partition(x: SkewElement) -> list:
    """Support split into G-conjugation orbits, each sorted, in canonical order."""
    G = x.setting.group
    left = set(x.terms)
    parts = []
    while left:
        m = min(left)
        orb = {conjugate(g, m) for g in G.elements} & set(x.terms)
        parts.append(sorted(orb))
        left -= orb
    return parts


def decompose_bimodule_classes(x: SkewElement) -> list:
    """One double coset per G-orbit of the support."""
    if x.is_zero():
        raise ZeroElement("zero element has no bimodule classes")
    G = x.setting.group
    seen = {}
    for orb in orbit_partition(x):
        dc = canonical_double_coset(G, orb[0])
        seen[dc.rep] = dc
    return [seen[k] for k in sorted(seen)]


def center_membership(x: SkewElement) -> bool:
    setting = x.setting
    e = setting.identity()
    if any(m != e for m in x.terms):
        return False
    if not x.terms:
        return True
    c = x.terms[e]
    if any(apply_automorphism(g, c) != c for g in setting.group.generators):
        return False
    return all(apply_automorphism(m, c) == c for m in setting.monoid.generators())


def noncommute_witness(setting: Setting, x: SkewElement) -> RatFunc | None:
    """A Gamma element ``gamma`` with ``gamma x != x gamma``, or None when supp x is in {e}."""
    e = setting.identity()
    if all(m == e for m in x.terms):
        return None
    for cand in gamma_candidates(setting):
        ge = SkewElement.scalar(setting, cand)
        if skew_mul(ge, x) != skew_mul(x, ge):
            return cand
    return None


# ---------------------------------------------------------------- lattice helpers


def _hnf_rank_det(rows: list) -> tuple:
    """Row-reduce an integer matrix; return (rank, |product of pivots|)."""
    A = [list(r) for r in rows]
    if not A:
        return 0, 0
    ncol = len(A[0])
    r = 0
    det = 1
    for c in range(ncol):
        # gcd-combine all rows at or below r in column c
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][c] != 0:
            det *= abs(A[r][c])
            r += 1
    return r, det


def _positive_dependency(vectors: list) -> bool:
    """Is there ``y >= 1`` with ``sum y_i v_i = 0``? Exact phase-one simplex."""
    k = len(vectors)
    if k == 0:
        return True
    d = len(vectors[0])
    # substitute y = 1 + z, z >= 0:  A z = -A 1
    A = [[Fraction(vectors[j][i]) for j in range(k)] for i in range(d)]
    b = [-sum(row) for row in A]
    for i in range(d):
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]
    # tableau with artificials
    ncols = k + d
    T = [A[i] + [Fraction(int(i == j)) for j in range(d)] + [b[i]] for i in range(d)]
    basis = [k + i for i in range(d)]
    cost = [Fraction(0)] * k + [Fraction(1)] * d + [Fraction(0)]
    # reduced costs
    obj = cost[:]
    for i in range(d):
        obj = [o - t for o, t in zip(obj, T[i])]
    while True:
        # Bland's rule
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][-1] / T[i][enter], basis[i], i) for i in range(d) if T[i][enter] > 0]
        if not ratios:
            break
        _, _, row = min(ratios)
        piv = T[row][enter]
        T[row] = [t / piv for t in T[row]]
        for i in range(d):
            if i != row and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[row])]
        f = obj[enter]
        obj = [o - f * c for o, c in zip(obj, T[row])]
        basis[row] = enter
    return -obj[-1] == 0


def lattice_semigroup_is_everything(vectors: Sequence[Sequence[int]], rank: int) -> bool:
    """Does the semigroup generated by ``vectors`` equal ``Z^rank``?

    True iff the vectors span ``Z^rank`` as a group and some strictly positive
    combination of them vanishes (their cone is then a subspace).
    """
    if rank == 0:
        return True
    vecs = [tuple(int(x) for x in v) for v in vectors]
    if not vecs:
        return False
    r, det = _hnf_rank_det(vecs)
    if r != rank or det != 1:
        return False
    return _positive_dependency(vecs)


def galois_generator_check(setting: Setting, gens: Sequence[SkewElement]) -> bool:
    """Do the supports of ``gens`` generate the monoid as a semigroup?"""
    M = setting.monoid
    supp = set()
    for u in gens:
        supp |= set(u.terms)
    if M.kind == "monoid":
        raise UnsupportedMonoid("semigroup generation is decided only for lattices and finite monoids")
    if M.kind == "finite":
        if not supp or not all(M.contains(m) for m in supp):
            return False
        reached = set(supp)
        frontier = list(supp)
        while frontier:
            nxt = []
            for a in frontier:
                for s in supp:
                    b = compose_aut(a, s)
                    if b not in reached:
                        reached.add(b)
                        nxt.append(b)
            frontier = nxt
        return reached == set(M.elements_list)
    if not supp:
        return False
    coords = []
    for m in supp:
        c = M.coordinates(m)
        if c is None or any(x.denominator != 1 for x in c):
            return False
        coords.append([int(x) for x in c])
    return lattice_semigroup_is_everything(coords, M.rank)


# ---------------------------------------------------------------- ideals


@dataclass(frozen=True)
class IdealClosure:
    """Result of :func:`ideal_support_closure`.

    ``whole`` is True when the ideal is the whole monoid; otherwise the
    ideal is the set of ``m`` with ``m = g o a`` for a generator ``g`` and
    some monoid element ``a``.
    """

    whole: bool
    generators: tuple = ()
    monoid: object = None

    def contains(self, m: AffineAut, bound: int = 40) -> bool:
        if self.whole:
            return self.monoid.contains(m, bound) if self.monoid is not None else True
        for g in self.generators:
            rest = compose_aut(invert_aut(g), m)
            if rest.is_identity() or self.monoid.contains(rest, bound):
                return True
        return False

    def describe(self) -> str:
        if self.whole:
            return "whole-monoid"
        return "ideal generated by " + ", ".join(repr(g) for g in self.generators)


def ideal_support_closure(setting: Setting, S: Iterable[AffineAut]) -> IdealClosure:
    """The G-invariant monoid ideal generated by ``S``."""
    S = list(S)
    if not S:
        raise EmptySupport("support set is empty")
    M = setting.monoid
    G = setting.group
    if M.is_group() or any(m.is_identity() for m in S):
        return IdealClosure(True, (), M)
    if M.kind == "finite":
        conj = {conjugate(g, s) for g in G.elements for s in S}
        ideal = {compose_aut(compose_aut(a, s), b) for a in M.elements_list for s in conj for b in M.elements_list}
        if ideal == set(M.elements_list):
            return IdealClosure(True, (), M)
        return IdealClosure(False, tuple(sorted(ideal)), M)
    conj = sorted({conjugate(g, s) for g in G.elements for s in S})
    # drop generators lying in the ideal of the others (shifts commute)
    minimal = []
    for s in conj:
        redundant = False
        for t in conj:
            if t == s:
                continue
            rest = compose_aut(invert_aut(t), s)
            if M.contains(rest):
                if not M.contains(compose_aut(invert_aut(s), t)) or t < s:
                    redundant = True
                    break
        if not redundant:
            minimal.append(s)
    return IdealClosure(False, tuple(minimal), M)
