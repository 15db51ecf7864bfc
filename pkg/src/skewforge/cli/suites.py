"""Named verification suites used by ``skewforge verify`` and the acceptance tests."""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..arith import Poly, RatFunc
from ..autgroup import AffineAut, apply_automorphism, compose_aut, stabilizer_and_orbit
from ..bimodhecke import (
    ClassSum,
    HeckeElement,
    class_dimension,
    finite_monoid_dimension_sum,
    grothendieck_to_hecke,
    hecke_mul,
    hecke_mul_bruteforce,
    simple_class,
    tensor_decompose,
    tensor_decompose_bruteforce,
)
from ..errors import UnknownSuite
from ..presets import (
    GTState,
    GWASpec,
    TorusSpec,
    build_finite,
    build_gwa,
    build_torus,
    check_generic,
    get_preset,
    gk_bound,
    gt_generator_image,
    gt_h,
    gt_module_act,
    gt_symbolic_act,
    gt_verify_relations,
    gwa_residuals,
    gwa_sigma,
    lift_element,
    tensor_product_rings,
    torus_residuals,
)
from ..skewring import (
    InvariantElement,
    Setting,
    SkewElement,
    center_membership,
    galois_generator_check,
    ideal_support_closure,
    invariant_mul,
    is_invariant,
    make_invariant,
    noncommute_witness,
    skew_mul,
)
from .printer import format_element

SUITES = ("gl-relations", "oracle-crosscheck", "gwa", "torus", "hecke", "support-law", "center")


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.status == "pass")

    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failed": self.failed,
            "elapsed": round(self.elapsed, 3),
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"{c.status.upper():4} {c.name}" + (f"  [{c.detail}]" if c.detail else "") for c in self.checks]
        lines.append(f"{self.suite}: {self.passed} passed, {self.failed} failed in {self.elapsed:.2f}s")
        return "\n".join(lines)


class _Recorder:
    def __init__(self):
        self.checks = []

    def add(self, name: str, ok: bool, detail: str = "", residual: SkewElement | None = None):
        if not ok and residual is not None and not detail:
            detail = format_element(residual, brackets=False)
        if not ok and not detail:
            detail = "check failed"
        self.checks.append(Check(name, "pass" if ok else "fail", "" if ok else detail))


def default_seed(seed: int | None = None) -> int:
    if seed is not None:
        return int(seed)
    return int(os.environ.get("SKEWFORGE_SEED", "0"))


# ---------------------------------------------------------------- random objects


def random_poly(setting: Setting, rng: random.Random, degree: int = 2, terms: int = 3) -> RatFunc:
    n = setting.nvars
    t = {}
    for _ in range(terms):
        d = rng.randint(0, degree)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        t[tuple(e)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return RatFunc.from_poly(Poly(t, n))


def random_gamma(setting: Setting, rng: random.Random) -> RatFunc:
    gens = setting.gamma_gens
    while True:
        f = RatFunc.const(rng.randint(-2, 2), setting.nvars)
        for g in gens:
            f = f + rng.randint(-2, 2) * g
        if len(gens) > 1 and rng.random() < 0.5:
            i, j = rng.sample(range(len(gens)), 2)
            f = f + gens[i] * gens[j]
        if not f.is_zero():
            return f


def random_monoid_element(setting: Setting, rng: random.Random, radius: int = 1) -> AffineAut:
    M = setting.monoid
    if M.kind == "lattice":
        return M.from_coordinates([rng.randint(-radius, radius) for _ in M.basis])
    return rng.choice(M.ball(radius))


def random_invariant(setting: Setting, rng: random.Random, radius: int = 1, degree: int = 2,
                     phi: AffineAut | None = None) -> InvariantElement:
    """``[a phi]`` with ``a`` averaged over the stabilizer of ``phi``."""
    while True:
        m = phi if phi is not None else random_monoid_element(setting, rng, radius)
        H = stabilizer_and_orbit(setting.group, m).stabilizer.elements
        a0 = random_poly(setting, rng, degree)
        a = RatFunc.const(0, setting.nvars)
        for h in H:
            a = a + apply_automorphism(h, a0)
        if not a.is_zero():
            return make_invariant(setting, a, m)


# ---------------------------------------------------------------- suites


def _suite_gl(rec: _Recorder, ns, rng, **_):
    for n in ns:
        S = get_preset(f"gt({n})").setting
        for c in gt_verify_relations(S, raise_on_fail=False):
            rec.add(f"gt({n}) {c.name}", c.passed, residual=c.residual)
        if n == 2:
            h = gt_h(S, 1)
            want = SkewElement.scalar(S, S.parse("l21 + l22 - 2*l11 - 1"))
            rec.add("gt(2) h1 = l21 + l22 - 2*l11 - 1", h == want, residual=h - want)
        if n >= 2:
            gens = [gt_generator_image(S, k, s) for k in range(1, n) for s in (1, -1)]
            rec.add(f"gt({n}) generator supports generate M", galois_generator_check(S, gens))
        want = (n * (n + 1) // 2, n * (n - 1) // 2, n * n)
        got = gk_bound(S)
        rec.add(f"gt({n}) gk bound {want}", got == want, f"got {got}")


def _random_tableau(n: int, rng: random.Random) -> list:
    while True:
        b = [Fraction(rng.randint(-30, 30), rng.choice([7, 11, 13, 17])) for _ in range(n * (n + 1) // 2)]
        try:
            check_generic(n, b)
            return b
        except ValueError:
            continue


def oracle_crosscheck(n: int, words: int, tableaux: int, rng: random.Random, max_len: int = 4):
    """Compare the symbolic action of random words with the module formulas; returns None or a failing word."""
    S = get_preset(f"gt({n})").setting
    keys = [(k, s) for k in range(1, n) for s in (1, -1)]
    E = {key: gt_generator_image(S, *key) for key in keys}
    zero = (0,) * (n * (n - 1) // 2)
    cache: dict = {}
    for _ in range(words):
        word = tuple(rng.choice(keys) for _ in range(rng.randint(1, max_len)))
        x = cache.get(word)
        if x is None:
            x = E[word[0]]
            for key in word[1:]:
                x = skew_mul(x, E[key])
            cache[word] = x
        for _ in range(tableaux):
            st = GTState(n, _random_tableau(n, rng), {zero: 1})
            ref = st
            for key in reversed(word):
                ref = gt_module_act(ref, *key)
            if gt_symbolic_act(x, st) != ref:
                return word, st.base
    return None


def _suite_oracle(rec: _Recorder, ns, rng, words: int = 200, tableaux: int = 5, **_):
    for n in ns:
        bad = oracle_crosscheck(n, words, tableaux, rng)
        detail = "" if bad is None else f"word {bad[0]} at tableau {[str(v) for v in bad[1]]}"
        rec.add(f"gt({n}) oracle {words} words x {tableaux} tableaux", bad is None, detail)


def _random_a(rng: random.Random) -> str:
    deg = rng.randint(0, 5)
    coeffs = [rng.randint(-4, 4) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return " + ".join(f"({c})*t^{k}" for k, c in enumerate(coeffs) if c)


def _suite_gwa(rec: _Recorder, ns, rng, a=None, randoms: int = 20, **_):
    polys = [a] if a is not None else ["t", "1", "t^2 + 1"] + [_random_a(rng) for _ in range(randoms)]
    for i, text in enumerate(polys):
        tag = text if i < 3 or a is not None else f"random#{i - 2}"
        for q in (Fraction(1), Fraction(2), Fraction(1, 2)):
            s, X, Y = build_gwa(GWASpec(text, q), check=False)
            aa = GWASpec(text, q).polynomial()
            for name, res in gwa_residuals(s, X, Y, aa, gwa_sigma(q)):
                rec.add(f"gwa({tag},{q}) {name}", res.is_zero(), residual=res)
    s, X, Y = build_gwa(GWASpec("t", 1), check=False)
    w = skew_mul(Y, X) - skew_mul(X, Y)
    one = SkewElement.scalar(s, 1)
    rec.add("gwa(t,1) weyl: YX - XY = 1 (t = dx)", w == one, residual=w - one)


TORUS_CASES = [(1, "plain"), (2, "plain"), (3, "plain"), (1, "symmetric"), (2, "symmetric"), (3, "symmetric"),
               (3, "orthogonal-odd"), (5, "orthogonal-odd"), (2, "orthogonal-even"), (4, "orthogonal-even"),
               (6, "orthogonal-even")]


def _suite_torus(rec: _Recorder, ns, rng, **_):
    for n, flavor in TORUS_CASES:
        P = build_torus(TorusSpec(n, flavor), check=False)
        tag = f"torus({n},{flavor})"
        p = P.setting.nvars
        for name, res in torus_residuals(P.setting, P.generators, p):
            rec.add(f"{tag} {name}", res.is_zero(), residual=res)
        for name, g in P.generators.items():
            if isinstance(g, InvariantElement):
                rec.add(f"{tag} {name} invariant", is_invariant(g))
        if flavor == "plain":
            rec.add(f"{tag} gk bound", gk_bound(P.setting) == (n, n, 2 * n), f"got {gk_bound(P.setting)}")
    P = build_torus(TorusSpec(2, "symmetric"))
    S = P.setting
    s1, s2 = AffineAut.from_shift([-1, 0]), AffineAut.from_shift([0, -1])
    want = SkewElement(S, {s1: 1, s2: 1})
    rec.add("torus(2,symmetric) [1*s(1)] = s(1) + s(2)", P.generators["inv_x"] == want)
    one = build_torus(TorusSpec(1))
    T = tensor_product_rings(one.setting, one.setting)
    lifted = {f"{k}{w}": lift_element(T, w, one.generators[f"{k}1"]) for k in "xd" for w in (1, 2)}
    gens = {f"x{w}": lifted[f"x{w}"] for w in (1, 2)} | {f"d{w}": lifted[f"d{w}"] for w in (1, 2)}
    for name, res in torus_residuals(T, gens, 2):
        rec.add(f"torus(1)(x)torus(1) {name}", res.is_zero(), residual=res)
    rec.add("torus(1)(x)torus(1) gk bound", gk_bound(T) == (2, 2, 4))


def hecke_pools() -> dict:
    s2 = get_preset("s2").setting
    g3 = get_preset("gt(3)").setting
    sh = lambda S, v: AffineAut.from_shift(v)  # noqa: E731
    from ..presets import gt_delta

    d = lambda k, i, a=1: gt_delta(g3, k, i, a)  # noqa: E731
    return {
        "s2": (s2, [sh(s2, v) for v in ([1, 0], [2, 0], [1, 1], [1, -1], [2, 1], [0, 0])]),
        "gt(3)": (g3, [d(1, 1), d(2, 1), d(2, 1) @ d(2, 2), d(1, 1) @ d(2, 1), d(2, 1, -1) @ d(2, 2), d(2, 1, 2)]),
    }


def _suite_hecke(rec: _Recorder, ns, rng, **_):
    for tag, (S, pool) in hecke_pools().items():
        G = S.group
        classes = {simple_class(G, p).rep for p in pool}
        rec.add(f"{tag} pool has >= 5 classes", len(classes) >= 5, f"{len(classes)} classes")
        inv = Fraction(1, G.order)
        for a, b in itertools.product(pool, repeat=2):
            pair = f"{tag} ({format_element(SkewElement(S, {a: 1}))}, {format_element(SkewElement(S, {b: 1}))})"
            hm = hecke_mul(HeckeElement.basis(G, a), HeckeElement.basis(G, b))
            prod = hm.scale(inv)
            rec.add(f"{pair} (1/|G|) b b nonnegative integral", prod.is_nonneg_integral(), repr(prod))
            rec.add(f"{pair} hecke formula = group algebra", hm == hecke_mul_bruteforce(G, a, b))
            ca, cb = simple_class(G, a), simple_class(G, b)
            dec = tensor_decompose(G, ca, cb)
            ok = all(type(k) is int and k > 0 for k in dec.terms.values())
            rec.add(f"{pair} tensor multiplicities positive integers", ok, repr(dec))
            dims = dec.dimension() == class_dimension(ca) * class_dimension(cb)
            rec.add(f"{pair} tensor dimension count", dims, repr(dec))
            brute = tensor_decompose_bruteforce(G, a, b)
            rec.add(f"{pair} tensor formula = coset sum", brute == {c.coset: Fraction(k) for c, k in dec.terms.items()})
            psi = hecke_mul(grothendieck_to_hecke(ClassSum.single(G, a)), grothendieck_to_hecke(ClassSum.single(G, b)))
            rec.add(f"{pair} Psi multiplicative", grothendieck_to_hecke(dec) == psi)
    S = get_preset("s2").setting
    G = S.group
    e1 = AffineAut.from_shift([1, 0])
    swap11 = AffineAut.transposition(0, 1, 2) @ AffineAut.from_shift([1, 1])
    got = hecke_mul(HeckeElement.basis(G, e1), HeckeElement.basis(G, e1)).scale(Fraction(1, G.order))
    want = HeckeElement.basis(G, AffineAut.from_shift([2, 0])) + HeckeElement.basis(G, swap11, 2)
    rec.add("s2 worked: (1/2) b(1,0) b(1,0) = b(2,0) + 2 b(swap.(1,1))", got == want, repr(got))
    total, order = finite_monoid_dimension_sum(build_finite())
    rec.add("finite: sum of class dimensions over M/G = |M|", total == order == 2, f"{total} vs {order}")


def support_law_pairs(S: Setting, rng: random.Random, pairs: int):
    """Yield ``(x, gamma, y, product)`` for random invariant pairs."""
    for _ in range(pairs):
        x = random_invariant(S, rng)
        y = random_invariant(S, rng)
        g = random_gamma(S, rng)
        yield x, g, y, invariant_mul(x, g, y)


def _suite_support(rec: _Recorder, ns, rng, pairs: int = 50, **_):
    for tag in ("gt(2)", "gt(3)", "s2"):
        S = get_preset(tag).setting
        bad = None
        for x, g, y, prod in support_law_pairs(S, rng, pairs):
            want = {compose_aut(m1, m2) for m1 in x.terms for m2 in y.terms}
            if set(prod.terms) != want:
                bad = f"{format_element(x)} ; {S.show(g)} ; {format_element(y)}"
                break
        rec.add(f"{tag} supp([a phi] gamma [b psi]) = O_phi O_psi ({pairs} pairs)", bad is None, bad or "")


def _suite_center(rec: _Recorder, ns, rng, samples: int = 10, **_):
    for n in (2, 3):
        S = get_preset(f"gt({n})").setting
        top = [S.var(f"l{n}{j}") for j in range(1, n + 1)]
        sym = [sum(x ** k for x in top) for k in range(1, n + 1)]
        for k, f in enumerate(sym, 1):
            el = SkewElement.scalar(S, f)
            rec.add(f"gt({n}) center contains top-row power sum p{k}", center_membership(el))
    S = get_preset("gt(2)").setting
    rec.add("gt(2) center rejects l11", not center_membership(SkewElement.scalar(S, S.var("l11"))))
    for tag in ("gt(2)", "gt(3)", "s2"):
        S = get_preset(tag).setting
        bad = None
        for _ in range(samples):
            x = random_invariant(S, rng)
            if set(x.terms) <= {S.identity()}:
                continue
            if noncommute_witness(S, x) is None:
                bad = format_element(x)
                break
        rec.add(f"{tag} noncommute witness for invariants off e", bad is None, bad or "")
        bad = None
        for _ in range(samples):
            k = rng.randint(1, 3)
            supp = [random_monoid_element(S, rng, 2) for _ in range(k)]
            if not ideal_support_closure(S, supp).whole:
                bad = repr(supp)
                break
        rec.add(f"{tag} ideal closure is the whole monoid", bad is None, bad or "")


_RUNNERS = {
    "gl-relations": _suite_gl,
    "oracle-crosscheck": _suite_oracle,
    "gwa": _suite_gwa,
    "torus": _suite_torus,
    "hecke": _suite_hecke,
    "support-law": _suite_support,
    "center": _suite_center,
}


def run_suite(name: str, n: int | None = None, seed: int | None = None, **options) -> SuiteReport:
    """Run a named suite; checks come back sorted by name."""
    if name != "all" and name not in _RUNNERS:
        raise UnknownSuite(name)
    rng = random.Random(default_seed(seed))
    ns = [n] if n is not None else [2, 3]
    t0 = time.perf_counter()
    rec = _Recorder()
    names = SUITES if name == "all" else (name,)
    for suite in names:
        sub = _Recorder()
        _RUNNERS[suite](sub, ns, rng, **options)
        prefix = f"{suite}: " if name == "all" else ""
        rec.checks.extend(Check(prefix + c.name, c.status, c.detail) for c in sub.checks)
    rec.checks.sort(key=lambda c: c.name)
    return SuiteReport(name, rec.checks, time.perf_counter() - t0)
