"""Gelfand-Tsetlin realization of U(gl_n).

Variables ``l{k}{j}`` (1 <= j <= k <= n) are listed row by row from the top
row ``k = n`` down to ``k = 1``; the top row is never shifted, so lattice
coordinates of the monoid are exactly the entries of the lower rows in
that order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..arith import RatFunc
from ..autgroup import AffineAut, FiniteGroup, ShiftMonoid, apply_automorphism
from ..errors import IndexOutOfRange, NonGenericTableau, PoleAtPoint, RelationFailed
from ..skewring import InvariantElement, Setting, SkewElement, Variable, make_invariant, skew_mul


def _name(k: int, j: int, n: int) -> str:
    return f"l{k}{j}" if n < 10 else f"l{k}_{j}"


def gt_layout(n: int) -> list:
    """``[(k, j), ...]`` in variable order."""
    return [(k, j) for k in range(n, 0, -1) for j in range(1, k + 1)]


def _elementary(vals: Sequence[RatFunc], j: int, nv: int) -> RatFunc:
    total = RatFunc.const(0, nv)
    for combo in itertools.combinations(range(len(vals)), j):
        t = RatFunc.const(1, nv)
        for i in combo:
            t = t * vals[i]
        total = total + t
    return total


def build_gt(n: int) -> Setting:
    if n < 1:
        raise ValueError("n must be at least 1")
    layout = gt_layout(n)
    nv = len(layout)
    index = {kj: v for v, kj in enumerate(layout)}
    variables = [Variable(v, _name(k, j, n), k) for v, (k, j) in enumerate(layout)]
    gens = []
    for k in range(2, n + 1):
        for j in range(1, k):
            gens.append(AffineAut.transposition(index[(k, j)], index[(k, j + 1)], nv))
    order = math.prod(math.factorial(k) for k in range(1, n + 1))
    G = FiniteGroup(gens, nv, order_hint=order)
    basis = []
    for k in range(n - 1, 0, -1):
        for i in range(1, k + 1):
            vec = [0] * nv
            vec[index[(k, i)]] = 1
            basis.append(vec)
    M = ShiftMonoid.lattice(basis, nv)
    gamma = []
    for k in range(n, 0, -1):
        row = [RatFunc.var(index[(k, j)], nv) for j in range(1, k + 1)]
        for j in range(1, k + 1):
            gamma.append(_elementary(row, j, nv))
    return Setting(variables, G, M, gamma, f"gt({n})", meta={"kind": "gt", "n": n})


def _n_of(setting: Setting) -> int:
    if setting.meta.get("kind") != "gt":
        raise ValueError("not a Gelfand-Tsetlin setting")
    return setting.meta["n"]


def gt_var(setting: Setting, k: int, j: int) -> int:
    n = _n_of(setting)
    return setting.index(_name(k, j, n))


def gt_delta(setting: Setting, k: int, i: int, amount: int = 1) -> AffineAut:
    """The shift ``l_{ki} -> l_{ki} + amount``."""
    n = _n_of(setting)
    if not (1 <= i <= k <= n - 1):
        raise IndexOutOfRange(f"delta^({k},{i}) needs 1 <= i <= k <= {n - 1}")
    vec = [0] * setting.nvars
    vec[gt_var(setting, k, i)] = amount
    return AffineAut.from_shift(vec)


def gt_coefficient(setting: Setting, k: int, i: int, sign: int) -> RatFunc:
    """``a^{+-}_{ki} = -+ prod_j (l_{k+-1,j} - l_{ki}) / prod_{j != i} (l_{kj} - l_{ki})``."""
    lam = lambda a, b: setting.var(gt_var(setting, a, b))  # noqa: E731
    x = lam(k, i)
    other = k + 1 if sign > 0 else k - 1
    num = RatFunc.const(-1 if sign > 0 else 1, setting.nvars)
    for j in range(1, other + 1):
        num = num * (lam(other, j) - x)
    den = RatFunc.const(1, setting.nvars)
    for j in range(1, k + 1):
        if j != i:
            den = den * (lam(k, j) - x)
    return num / den


def gt_generator_image(setting: Setting, k: int, sign: int) -> InvariantElement:
    """Image of ``e_{k,k+1}`` (sign +1) or ``e_{k+1,k}`` (sign -1).

    The element is the orbit sum of ``mu * a`` with ``mu = +-delta^{k1}`` written
    to the left of ``a = a^{+-}_{k1}``; in left-coefficient form its term at
    ``mu`` is ``mu(a) mu``.
    """
    n = _n_of(setting)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"k must satisfy 1 <= k <= {n - 1}")
    mu = gt_delta(setting, k, 1, sign)
    a = gt_coefficient(setting, k, 1, sign)
    return make_invariant(setting, apply_automorphism(mu, a), mu)


def commutator(x: SkewElement, y: SkewElement) -> SkewElement:
    return skew_mul(x, y) - skew_mul(y, x)


@dataclass
class RelationCheck:
    name: str
    passed: bool
    residual: SkewElement | None = None


def gt_h(setting: Setting, k: int) -> SkewElement:
    return commutator(gt_generator_image(setting, k, 1), gt_generator_image(setting, k, -1))


def gt_verify_relations(setting: Setting, n: int | None = None, raise_on_fail: bool = True) -> list:
    """Check the gl_n relations on the generator images; one entry per relation."""
    if n is None:
        n = _n_of(setting)
    if n != _n_of(setting):
        raise ValueError("n does not match the setting")
    E = {(k, s): gt_generator_image(setting, k, s) for k in range(1, n) for s in (1, -1)}
    e = setting.identity()
    checks = []

    def record(name, residual, ok=None):
        passed = residual.is_zero() if ok is None else ok
        checks.append(RelationCheck(name, passed, None if passed else residual))

    H = {}
    for k in range(1, n):
        h = commutator(E[(k, 1)], E[(k, -1)])
        H[k] = h
        ok = set(h.terms) <= {e}
        if ok and h.terms:
            c = h.terms[e]
            ok = setting.is_gamma(c)
        record(f"h{k} in Gamma", h, ok)
    for i in range(1, n):
        for j in range(1, n):
            if i != j:
                record(f"[E{i}+,E{j}-]=0", commutator(E[(i, 1)], E[(j, -1)]))
    for i in range(1, n):
        for j in range(1, n):
            c = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            for s in (1, -1):
                lhs = commutator(H[i], E[(j, s)])
                record(f"[h{i},E{j}{'+' if s > 0 else '-'}]={s * c}E", lhs - E[(j, s)].scale(s * c))
    for s in (1, -1):
        tag = "+" if s > 0 else "-"
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) == 1:
                    record(f"serre[E{i}{tag},[E{i}{tag},E{j}{tag}]]=0",
                           commutator(E[(i, s)], commutator(E[(i, s)], E[(j, s)])))
                elif abs(i - j) >= 2:
                    record(f"[E{i}{tag},E{j}{tag}]=0", commutator(E[(i, s)], E[(j, s)]))
    if raise_on_fail:
        for c in checks:
            if not c.passed:
                raise RelationFailed(c.name, c.residual)
    return checks


# ---------------------------------------------------------------- module oracle


@dataclass
class GTState:
    """Vector in the generic module: amplitudes on lattice points over a base tableau.

    ``base`` lists tableau values in variable order; amplitude keys are
    lattice coordinates (entries of the non-top rows, in variable order).
    """

    n: int
    base: tuple
    amplitudes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.base = tuple(Fraction(x) for x in self.base)
        if len(self.base) != self.n * (self.n + 1) // 2:
            raise ValueError("base tableau has the wrong size")
        self.amplitudes = {tuple(int(c) for c in m): Fraction(a) for m, a in self.amplitudes.items() if a}
        check_generic(self.n, self.base)

    def entry(self, m: Sequence[int], k: int, j: int) -> Fraction:
        """Tableau value ``(base + m)_{kj}``."""
        v = _layout_index(self.n)[(k, j)]
        return self.base[v] + (m[v - self.n] if k < self.n else 0)

    def with_amplitudes(self, amps: dict) -> "GTState":
        s = object.__new__(GTState)
        s.n = self.n
        s.base = self.base
        s.amplitudes = {m: a for m, a in amps.items() if a}
        return s

    def __eq__(self, other):
        if not isinstance(other, GTState):
            return NotImplemented
        return self.n == other.n and self.base == other.base and self.amplitudes == other.amplitudes


_LAYOUT_CACHE: dict = {}


def _layout_index(n: int) -> dict:
    d = _LAYOUT_CACHE.get(n)
    if d is None:
        d = {kj: v for v, kj in enumerate(gt_layout(n))}
        _LAYOUT_CACHE[n] = d
    return d


def check_generic(n: int, base: Sequence[Fraction]):
    """Pairs within a row and across adjacent rows must not differ by an integer."""
    idx = _layout_index(n)
    for (k, j), v in idx.items():
        for (k2, j2), w in idx.items():
            if w <= v or abs(k - k2) > 1:
                continue
            d = Fraction(base[v]) - Fraction(base[w])
            if d.denominator == 1:
                raise NonGenericTableau(f"l{k}{j} - l{k2}{j2} = {d} is an integer")


def _oracle_coeff(state: GTState, m, k: int, i: int, sign: int) -> Fraction:
    x = state.entry(m, k, i)
    other = k + 1 if sign > 0 else k - 1
    num = Fraction(-1 if sign > 0 else 1)
    for j in range(1, other + 1):
        num *= state.entry(m, other, j) - x
    den = Fraction(1)
    for j in range(1, k + 1):
        if j != i:
            den *= state.entry(m, k, j) - x
    if den == 0:
        raise NonGenericTableau(f"vanishing denominator for a({k},{i}) at {m}")
    return num / den


def gt_module_act(state: GTState, k: int, sign: int) -> GTState:
    """``E_k^{+-} m = sum_i a^{+-}_{ki}(l + m) (m +- delta^{ki})``."""
    n = state.n
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"k must satisfy 1 <= k <= {n - 1}")
    idx = _layout_index(n)
    out: dict = {}
    for m, amp in state.amplitudes.items():
        for i in range(1, k + 1):
            c = _oracle_coeff(state, m, k, i, sign)
            if not c:
                continue
            t = list(m)
            t[idx[(k, i)] - n] += sign
            t = tuple(t)
            out[t] = out.get(t, 0) + amp * c
    return state.with_amplitudes(out)


def gt_symbolic_act(x: SkewElement, state: GTState) -> GTState:
    """Action of a skew element on the generic module.

    A term ``c * mu`` sends amplitude at ``m`` to ``m + d`` (``d`` the shift of
    ``mu``) with weight ``c`` evaluated at the negated tableau ``-(l + m + d)``;
    this pairing is multiplicative for the product rule and agrees with the
    generator formulas because every ``a^{+-}_{ki}`` is even under ``l -> -l``.
    """
    n = state.n
    setting = x.setting
    out: dict = {}
    terms = []
    for mu, c in x.terms.items():
        if not mu.is_pure_shift():
            raise ValueError("only pure shifts act on the generic module")
        d = mu.shift[n:]
        if any(mu.shift[:n]):
            raise ValueError("top-row shifts are not in the monoid")
        terms.append((tuple(int(v) for v in d), c))
    for m, amp in state.amplitudes.items():
        for d, c in terms:
            t = tuple(a + b for a, b in zip(m, d))
            point = [-(state.base[v] + (t[v - n] if v >= n else 0)) for v in range(setting.nvars)]
            try:
                w = c.evaluate(point)
            except PoleAtPoint:
                raise NonGenericTableau(f"coefficient has a pole at the tableau for {t}") from None
            if w:
                out[t] = out.get(t, 0) + amp * w
    return state.with_amplitudes(out)
