from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import polys, ratfuncs

from skewforge.arith import RatFunc
from skewforge.autgroup import AffineAut, compose_aut, conjugate, invert_aut
from skewforge.errors import (
    EmptySupport,
    NotGammaElement,
    NotStabilizerInvariant,
    SettingMismatch,
    UnsupportedMonoid,
    ZeroElement,
)
from skewforge.presets import GWASpec, build_gt, build_gwa, build_s2, build_skewpoly, gt_delta, gt_generator_image
from skewforge.skewring import (
    InvariantElement,
    SkewElement,
    center_membership,
    decompose_bimodule_classes,
    element_from_json,
    element_to_json,
    galois_generator_check,
    ideal_support_closure,
    invariant_mul,
    is_invariant,
    make_invariant,
    noncommute_witness,
    project_component,
    restrict_support,
    skew_mul,
    support,
    symmetrize,
)

S2 = build_s2()
GT2 = build_gt(2)
X1, X2 = S2.var("x1"), S2.var("x2")


def sh(*v):
    return AffineAut.from_shift(list(v))


def u():
    return make_invariant(S2, 1, sh(1, 0))


def orbit(setting, m):
    return {conjugate(g, m) for g in setting.group.elements}


shifts2 = st.lists(st.integers(-2, 2), min_size=2, max_size=2).map(lambda v: sh(*v))


@st.composite
def skew_elements(draw, setting=S2, max_terms=3):
    n = setting.nvars
    terms = draw(st.lists(st.tuples(shifts2, ratfuncs(nvars=n, max_terms=2, max_deg=2)), max_size=max_terms))
    return SkewElement(setting, terms)


@st.composite
def invariant_elements(draw, nonzero=False):
    x = draw(skew_elements())
    if nonzero:
        c = draw(polys(max_terms=2, max_deg=2).filter(lambda p: not p.is_zero()))
        x = x + SkewElement.monomial(S2, RatFunc.from_poly(c), draw(shifts2))
    y = symmetrize(x)
    if nonzero and y.is_zero():
        y = make_invariant(S2, 1, sh(1, 0))
    return y


class TestMakeInvariant:
    def test_gt_single_term(self):
        x = make_invariant(GT2, 1, gt_delta(GT2, 1, 1))
        assert x.terms == {gt_delta(GT2, 1, 1): RatFunc.const(1, 3)}

    def test_coset_sum(self):
        x = make_invariant(S2, X1, sh(1, 0))
        assert x.terms == {sh(1, 0): X1, sh(0, 1): X2}

    def test_stabilizer_violation(self):
        with pytest.raises(NotStabilizerInvariant):
            make_invariant(S2, X1, sh(1, 1))

    def test_zero(self):
        assert make_invariant(S2, 0, sh(1, 0)).is_zero()

    def test_support_is_orbit(self):
        assert support(make_invariant(S2, X1 * X1 + 1, sh(2, -1))) == {sh(2, -1), sh(-1, 2)}


class TestProduct:
    def test_u_squared(self):
        uu = skew_mul(u(), u())
        assert uu.terms == {sh(2, 0): S2.const(1), sh(1, 1): S2.const(2), sh(0, 2): S2.const(1)}
        assert support(uu) == {sh(2, 0), sh(1, 1), sh(0, 2)}
        assert isinstance(uu, InvariantElement)

    def test_weyl(self):
        s, X, Y = build_gwa(GWASpec("t", 1))
        t = s.var("t")
        assert skew_mul(Y, X) == SkewElement.scalar(s, t)
        sigma = s.shift([-1])
        assert skew_mul(SkewElement.monomial(s, 1, sigma), SkewElement.scalar(s, t)) == SkewElement.monomial(s, t - 1, sigma)

    def test_mismatch(self):
        with pytest.raises(SettingMismatch):
            skew_mul(u(), make_invariant(GT2, 1, gt_delta(GT2, 1, 1)))

    @given(skew_elements(), skew_elements(), skew_elements())
    def test_associative(self, x, y, z):
        assert skew_mul(skew_mul(x, y), z) == skew_mul(x, skew_mul(y, z))

    @given(skew_elements(), skew_elements(), skew_elements())
    def test_distributive(self, x, y, z):
        assert skew_mul(x, y + z) == skew_mul(x, y) + skew_mul(x, z)

    @given(invariant_elements(), invariant_elements())
    def test_invariance_closure(self, x, y):
        assert is_invariant(skew_mul(x, y))

    @given(invariant_elements())
    def test_identity_component_is_fixed(self, x):
        c = x.coeff(S2.identity())
        assert all(g(c) == c for g in S2.group.elements)


class TestInvariance:
    def test_examples(self):
        assert is_invariant(make_invariant(S2, X1, sh(1, 0)))
        assert not is_invariant(SkewElement.monomial(S2, X1, sh(1, 0)))
        s = build_skewpoly()
        assert is_invariant(SkewElement.monomial(s, s.var("t"), s.shift([3])))

    def test_json_round_trip(self):
        x = make_invariant(S2, X1 / (X2 + 1), sh(1, -2))
        y = element_from_json(S2, element_to_json(x))
        assert y == x and isinstance(y, InvariantElement)
        assert element_to_json(x)["setting"] == "s2"

    def test_json_wrong_setting(self):
        with pytest.raises(SettingMismatch):
            element_from_json(GT2, element_to_json(u()))


class TestInvariantMul:
    def test_trivial_group(self):
        s = build_skewpoly()
        a, b = s.shift([1]), s.shift([2])
        x = InvariantElement.from_skew(SkewElement.monomial(s, 1, a))
        y = InvariantElement.from_skew(SkewElement.monomial(s, 1, b))
        assert invariant_mul(x, s.const(1), y).terms == {compose_aut(a, b): s.const(1)}

    def test_orbit_product(self):
        assert support(invariant_mul(u(), S2.const(1), u())) == {sh(2, 0), sh(1, 1), sh(0, 2)}

    def test_gt_shift_of_gamma(self):
        d = gt_delta(GT2, 1, 1)
        x, y = make_invariant(GT2, 1, d), make_invariant(GT2, 1, invert_aut(d))
        got = invariant_mul(x, GT2.var("l11"), y)
        assert got == SkewElement.scalar(GT2, GT2.var("l11") + 1)

    def test_not_gamma(self):
        with pytest.raises(NotGammaElement):
            invariant_mul(u(), X1, u())
        with pytest.raises(NotGammaElement):
            invariant_mul(u(), 1 / (X1 + X2), u())

    @given(st.data())
    def test_support_product_law(self, data):
        a = data.draw(shifts2)
        b = data.draw(shifts2)
        fa = data.draw(st.sampled_from([S2.const(1), X1 * X2, X1 + X2 + 3]))
        fb = data.draw(st.sampled_from([S2.const(2), X1 * X1 + X2 * X2, X1 * X2 - 1]))
        gamma = data.draw(st.sampled_from([S2.const(1), X1 + X2, X1 * X2 + 2]))
        x, y = make_invariant(S2, fa, a), make_invariant(S2, fb, b)
        want = {compose_aut(p, q) for p in orbit(S2, a) for q in orbit(S2, b)}
        assert support(invariant_mul(x, gamma, y)) == want


class TestRestrictProject:
    def test_restrict(self):
        uu = skew_mul(u(), u())
        assert restrict_support(uu, support(uu)) == uu
        assert restrict_support(uu, set()).is_zero()
        assert restrict_support(uu, {sh(1, 1)}).terms == {sh(1, 1): S2.const(2)}
        r = restrict_support(uu, {sh(2, 0)})
        assert restrict_support(r, {sh(2, 0)}) == r

    def test_project_full(self):
        uu = skew_mul(u(), u())
        assert project_component(uu, support(uu), X1 + X2) == uu

    def test_project_constant_kills(self):
        uu = skew_mul(u(), u())
        assert project_component(uu, {sh(1, 1)}, S2.const(5)).is_zero()

    def test_project_two_orbits(self):
        x = u() + make_invariant(S2, 1, sh(2, 0))
        S = orbit(S2, sh(1, 0))
        f = X1 + X2
        got = project_component(x, S, f)
        assert support(got) == S
        # each surviving term c m becomes c * prod_t (f - (m t^-1)(f)) m
        T = support(x) - S
        for m in S:
            want = x.coeff(m)
            for t in T:
                want = want * (f - compose_aut(m, invert_aut(t))(f))
            assert got.coeff(m) == want

    def test_project_auto_search(self):
        x = u() + make_invariant(S2, 1, sh(2, 0))
        S = orbit(S2, sh(2, 0))
        assert support(project_component(x, S)) == S

    def test_project_not_gamma(self):
        with pytest.raises(NotGammaElement):
            project_component(u(), set(), X1)

    @given(invariant_elements(nonzero=True))
    def test_projections_separate_orbits(self, x):
        total = 0
        for dc_orbit in {frozenset(orbit(S2, m)) for m in support(x)}:
            p = project_component(x, dc_orbit)
            assert support(p) <= dc_orbit
            assert not p.is_zero()
            total += 1
        assert total == len(decompose_bimodule_classes(x))


class TestDecompose:
    def test_single(self):
        dcs = decompose_bimodule_classes(make_invariant(S2, X1, sh(3, 1)))
        assert [dc.rep for dc in dcs] == [sh(1, 3)]

    def test_two_orbits(self):
        x = u() + make_invariant(S2, 1, sh(2, 0))
        assert len(decompose_bimodule_classes(x)) == 2

    def test_u_squared(self):
        dcs = decompose_bimodule_classes(skew_mul(u(), u()))
        assert [dc.rep for dc in dcs] == [sh(0, 2), sh(1, 1)]
        assert [dc.orbit_size for dc in dcs] == [2, 1]

    def test_zero(self):
        with pytest.raises(ZeroElement):
            decompose_bimodule_classes(SkewElement.zero(S2))


class TestCenter:
    def test_gt2(self):
        l21, l22, l11 = GT2.var("l21"), GT2.var("l22"), GT2.var("l11")
        assert center_membership(SkewElement.scalar(GT2, l21 + l22))
        assert not center_membership(SkewElement.scalar(GT2, l11))
        assert not center_membership(make_invariant(GT2, 1, gt_delta(GT2, 1, 1)))

    def test_witness(self):
        x = make_invariant(GT2, 1, gt_delta(GT2, 1, 1))
        g = noncommute_witness(GT2, x)
        assert g is not None and GT2.is_gamma(g)
        ge = SkewElement.scalar(GT2, g)
        assert skew_mul(ge, x) != skew_mul(x, ge)
        assert noncommute_witness(GT2, SkewElement.scalar(GT2, GT2.var("l21") * GT2.var("l22"))) is None
        assert noncommute_witness(GT2, SkewElement.zero(GT2)) is None

    @given(invariant_elements(nonzero=True))
    def test_maximal_commutativity(self, x):
        if support(x) <= {S2.identity()}:
            assert noncommute_witness(S2, x) is None
            return
        g = noncommute_witness(S2, x)
        assert g is not None
        ge = SkewElement.scalar(S2, g)
        assert skew_mul(ge, x) != skew_mul(x, ge)


class TestGaloisGenerators:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_gt(self, n):
        s = build_gt(n)
        gens = [gt_generator_image(s, k, sign) for k in range(1, n) for sign in (1, -1)]
        assert galois_generator_check(s, gens)

    def test_half(self):
        assert not galois_generator_check(GT2, [make_invariant(GT2, 1, gt_delta(GT2, 1, 1))])

    def test_empty(self):
        assert not galois_generator_check(GT2, [])

    def test_general_monoid(self):
        s = build_skewpoly()
        with pytest.raises(UnsupportedMonoid):
            galois_generator_check(s, [SkewElement.monomial(s, 1, s.shift([1]))])


class TestIdeals:
    def test_gt_simple(self):
        s = build_gt(3)
        assert ideal_support_closure(s, [gt_delta(s, 2, 1)]).whole

    def test_skewpoly(self):
        s = build_skewpoly()
        I = ideal_support_closure(s, [s.shift([2])])
        assert not I.whole
        assert I.generators == (s.shift([2]),)
        assert I.contains(s.shift([2])) and I.contains(s.shift([7]))
        assert not I.contains(s.shift([1])) and not I.contains(s.identity())

    def test_identity(self):
        s = build_skewpoly()
        assert ideal_support_closure(s, [s.identity()]).whole

    def test_empty(self):
        with pytest.raises(EmptySupport):
            ideal_support_closure(GT2, [])


def test_scalar_fraction():
    assert SkewElement.scalar(S2, Fraction(1, 2)).coeff(S2.identity()) == S2.const(Fraction(1, 2))
