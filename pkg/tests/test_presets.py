import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewforge.arith import RatFunc
from skewforge.autgroup import apply_automorphism, is_separating, normalizes_check
from skewforge.errors import (
    IndexOutOfRange,
    InvalidSetting,
    NonGenericTableau,
    ParseError,
    UnsupportedFlavor,
    UnsupportedSetting,
)
from skewforge.presets import (
    GTState,
    GWASpec,
    TorusSpec,
    build_finite,
    build_gt,
    build_gwa,
    build_s2,
    build_skewpoly,
    build_torus,
    get_preset,
    gk_bound,
    gt_coefficient,
    gt_delta,
    gt_generator_image,
    gt_h,
    gt_module_act,
    gt_symbolic_act,
    gt_verify_relations,
    gwa_residuals,
    gwa_sigma,
    lift_aut,
    lift_element,
    lift_ratfunc,
    tensor_product_rings,
)
from skewforge.skewring import SkewElement, is_invariant, make_invariant, skew_mul

GT2 = build_gt(2)


def P(setting, text):
    return setting.parse(text)


class TestGTSetting:
    @pytest.mark.parametrize("n,nv,order,rank", [(1, 1, 1, 0), (2, 3, 2, 1), (3, 6, 12, 3), (4, 10, 288, 6)])
    def test_sizes(self, n, nv, order, rank):
        s = build_gt(n)
        assert s.nvars == nv
        assert s.group.order == order and len(s.group.elements) == order
        assert s.monoid.rank == rank
        assert normalizes_check(s.group, s.monoid)
        assert is_separating(s, s.monoid, s.group).status is True

    def test_gamma_is_rowwise_elementary(self):
        assert [GT2.show(g) for g in GT2.gamma_gens] == ["l21 + l22", "l21*l22", "l11"]

    def test_bad_n(self):
        with pytest.raises(ValueError):
            build_gt(0)

    def test_delta_range(self):
        with pytest.raises(IndexOutOfRange):
            gt_delta(GT2, 2, 1)


class TestGTGenerators:
    def test_coefficient_formula(self):
        assert gt_coefficient(GT2, 1, 1, 1) == P(GT2, "-(l21 - l11)*(l22 - l11)")
        assert gt_coefficient(GT2, 1, 1, -1) == GT2.const(1)

    def test_raising_n2(self):
        # the term at delta carries delta applied to a^+
        e = gt_generator_image(GT2, 1, 1)
        d = gt_delta(GT2, 1, 1)
        assert e.terms == {d: P(GT2, "-(l21 - l11 - 1)*(l22 - l11 - 1)")}

    def test_lowering_n2(self):
        assert gt_generator_image(GT2, 1, -1).terms == {gt_delta(GT2, 1, 1, -1): GT2.const(1)}

    def test_raising_n3_row2(self):
        s = build_gt(3)
        e = gt_generator_image(s, 2, 1)
        assert set(e.terms) == {gt_delta(s, 2, 1), gt_delta(s, 2, 2)}
        c1 = e.terms[gt_delta(s, 2, 1)]
        assert c1 == apply_automorphism(gt_delta(s, 2, 1), gt_coefficient(s, 2, 1, 1))
        assert c1.den == P(s, "l21 - l22 + 1").num
        assert is_invariant(e)

    def test_index_range(self):
        with pytest.raises(IndexOutOfRange):
            gt_generator_image(GT2, 2, 1)

    def test_h1(self):
        assert gt_h(GT2, 1) == SkewElement.scalar(GT2, P(GT2, "l21 + l22 - 2*l11 - 1"))

    def test_h_commutes_with_raising(self):
        e = gt_generator_image(GT2, 1, 1)
        h = gt_h(GT2, 1)
        assert skew_mul(h, e) - skew_mul(e, h) == e.scale(2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_relations(self, n):
        checks = gt_verify_relations(build_gt(n), n)
        assert checks and all(c.passed for c in checks)


class TestGTModule:
    def test_lowering(self):
        st_ = GTState(2, (Fraction(1, 2), Fraction(5, 3), Fraction(1, 7)), {(0,): 1})
        assert gt_module_act(st_, 1, -1).amplitudes == {(-1,): 1}

    def test_commutator_value(self):
        base = (Fraction(1, 2), Fraction(5, 3), Fraction(1, 7))
        st_ = GTState(2, base, {(0,): 1})
        ab = gt_module_act(gt_module_act(st_, 1, -1), 1, 1)
        ba = gt_module_act(gt_module_act(st_, 1, 1), 1, -1)
        comm = ab.amplitudes[(0,)] - ba.amplitudes[(0,)]
        # module formulas evaluated at the tableau l give -(l21 + l22 - 2 l11) - 1
        assert comm == Fraction(-121, 42)
        assert gt_symbolic_act(gt_h(GT2, 1), st_).amplitudes == {(0,): comm}

    def test_non_generic(self):
        with pytest.raises(NonGenericTableau):
            GTState(2, (Fraction(1, 2), Fraction(5, 2), Fraction(1, 7)), {(0,): 1})

    @given(st.lists(st.sampled_from([(1, 1), (1, -1), (2, 1), (2, -1)]), min_size=1, max_size=3),
           st.integers(0, 10 ** 6))
    def test_oracle_agreement_n3(self, word, seed):
        from skewforge.cli.suites import _random_tableau
        s = build_gt(3)
        rng = random.Random(seed)
        x = gt_generator_image(s, *word[0])
        for key in word[1:]:
            x = skew_mul(x, gt_generator_image(s, *key))
        st_ = GTState(3, _random_tableau(3, rng), {(0, 0, 0): 1})
        ref = st_
        for key in reversed(word):
            ref = gt_module_act(ref, *key)
        assert gt_symbolic_act(x, st_) == ref


class TestGWA:
    def test_weyl(self):
        s, X, Y = build_gwa(GWASpec("t", 1))
        t = s.var("t")
        assert skew_mul(Y, X) == SkewElement.scalar(s, t)
        assert skew_mul(X, Y) == SkewElement.scalar(s, t - 1)
        assert skew_mul(X, Y) - skew_mul(Y, X) == SkewElement.scalar(s, -1)

    def test_laurent(self):
        s, X, Y = build_gwa(GWASpec("1", 1))
        one = SkewElement.scalar(s, 1)
        assert skew_mul(X, Y) == one and skew_mul(Y, X) == one

    def test_quadratic(self):
        s, X, Y = build_gwa(GWASpec("t^2 + 1", 1))
        assert skew_mul(Y, X) == SkewElement.scalar(s, P(s, "t^2 + 1"))
        assert skew_mul(X, Y) == SkewElement.scalar(s, P(s, "(t - 1)^2 + 1"))

    @given(st.lists(st.integers(-4, 4), min_size=1, max_size=6).filter(any),
           st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2)]))
    def test_random(self, coeffs, q):
        text = " + ".join(f"({c})*t^{k}" for k, c in enumerate(coeffs))
        s, X, Y = build_gwa(GWASpec(text, q), check=False)
        a = P(s, text)
        probes = [s.var("t"), P(s, "t^3 - 2*t"), a]
        assert all(r.is_zero() for _, r in gwa_residuals(s, X, Y, a, gwa_sigma(q), probes))

    def test_invalid(self):
        with pytest.raises(InvalidSetting):
            build_gwa(GWASpec("0", 1))
        with pytest.raises(InvalidSetting):
            build_gwa(GWASpec("1/t", 1))
        with pytest.raises(InvalidSetting):
            build_gwa(GWASpec("t", 0))


class TestTorus:
    def test_plain_weyl(self):
        s, g = build_torus(TorusSpec(1, "plain"))
        d, x = g["d1"], g["x1"]
        assert skew_mul(d, x) - skew_mul(x, d) == SkewElement.scalar(s, 1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_plain_pairwise(self, n):
        s, g = build_torus(TorusSpec(n, "plain"))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                c = skew_mul(g[f"d{i}"], g[f"x{j}"]) - skew_mul(g[f"x{j}"], g[f"d{i}"])
                assert c == SkewElement.scalar(s, 1 if i == j else 0)

    def test_symmetric(self):
        s, g = build_torus(TorusSpec(2, "symmetric"))
        assert g["inv_x"] == make_invariant(s, 1, s.shift([-1, 0]))
        assert set(g["inv_x"].terms) == {s.shift([-1, 0]), s.shift([0, -1])}
        assert all(is_invariant(v) for k, v in g.items() if k.startswith(("inv", "gamma")))
        assert [s.show(x) for x in s.gamma_gens] == ["t1 + t2", "t1^2 + t2^2"]

    def test_orthogonal_odd(self):
        s, g = build_torus(TorusSpec(3, "orthogonal-odd"))
        eps = g["eps"]
        t = s.var("t1")
        assert apply_automorphism(eps, t) == 2 - t
        assert apply_automorphism(eps, apply_automorphism(eps, t)) == t
        d, x = g["d1"], g["x1"]
        assert skew_mul(d, x) - skew_mul(x, d) == SkewElement.scalar(s, 1)
        assert s.group.order == 2

    def test_orthogonal_even(self):
        s, g = build_torus(TorusSpec(4, "orthogonal-even"))
        assert s.nvars == 2
        assert s.group.order == 4
        assert all(is_invariant(v) for k, v in g.items() if k.startswith(("inv", "gamma")))

    @pytest.mark.parametrize("n,flavor", [(2, "orthogonal-odd"), (1, "orthogonal-odd"), (3, "orthogonal-even"),
                                          (1, "bogus"), (0, "plain")])
    def test_unsupported(self, n, flavor):
        with pytest.raises(UnsupportedFlavor):
            build_torus(TorusSpec(n, flavor))


class TestTensor:
    def test_tori(self):
        t1 = build_torus(TorusSpec(1, "plain")).setting
        prod = tensor_product_rings(t1, t1)
        t2 = build_torus(TorusSpec(2, "plain")).setting
        assert prod.names == ("t1_1", "t1_2")
        assert prod.monoid.basis == t2.monoid.basis
        assert prod.gamma_gens == t2.gamma_gens
        assert prod.group.order == 1

    def test_gt_group_order(self):
        assert tensor_product_rings(GT2, GT2).group.order == 4

    def test_lifts_commute(self):
        s1, g1 = build_torus(TorusSpec(1, "plain"))
        s2, X, Y = build_gwa(GWASpec("t^2 + 1", 1))
        prod = tensor_product_rings(s1, s2)
        a = lift_element(prod, 1, g1["d1"])
        b = lift_element(prod, 2, Y)
        assert skew_mul(a, b) == skew_mul(b, a)
        assert skew_mul(lift_element(prod, 1, g1["d1"]), lift_element(prod, 1, g1["x1"])) == \
            lift_element(prod, 1, skew_mul(g1["d1"], g1["x1"]))

    def test_lift_pieces(self):
        prod = tensor_product_rings(GT2, build_s2())
        assert lift_ratfunc(prod, 2, build_s2().var("x1")) == prod.var("x1")
        assert lift_aut(prod, 1, gt_delta(GT2, 1, 1)).shift == (0, 0, 1, 0, 0)

    def test_finite_with_infinite(self):
        with pytest.raises(UnsupportedSetting):
            tensor_product_rings(build_finite(), build_s2())


class TestGK:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_gt(self, n):
        assert gk_bound(build_gt(n)) == (n * (n + 1) // 2, n * (n - 1) // 2, n * n)

    def test_gwa(self):
        assert gk_bound(build_gwa(GWASpec("t", 1))[0]) == (1, 1, 2)

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_torus(self, n):
        assert gk_bound(build_torus(TorusSpec(n, "plain")).setting) == (n, n, 2 * n)

    def test_unsupported(self):
        with pytest.raises(UnsupportedSetting):
            gk_bound(build_skewpoly())


class TestPresetNames:
    @pytest.mark.parametrize("name,label", [("gt(3)", "gt(3)"), ("gwa(t^2+1, 2)", "gwa(t^2 + 1,2)"),
                                            ("torus(2,symmetric)", "torus(2,symmetric)"), ("s2", "s2"),
                                            ("tensor(gt(2),s2)", "tensor(gt(2),s2)")])
    def test_lookup(self, name, label):
        assert get_preset(name).setting.label == label

    @pytest.mark.parametrize("name", ["nope", "gt(x)", "gt(2", "tensor(s2)"])
    def test_bad(self, name):
        with pytest.raises(ParseError):
            get_preset(name)
