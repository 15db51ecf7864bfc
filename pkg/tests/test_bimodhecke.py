import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewforge.autgroup import AffineAut, canonical_double_coset, compose_aut, conjugate, trivial_group
from skewforge.bimodhecke import (
    ClassSum,
    HeckeElement,
    class_dimension,
    finite_monoid_dimension_sum,
    grothendieck_to_hecke,
    hecke_mul,
    hecke_mul_bruteforce,
    monoid_classes,
    multiplicity_from_family,
    simple_class,
    structure_table,
    structure_table_json,
    structure_table_text,
    tensor_decompose,
    tensor_decompose_bruteforce,
    tensor_family,
)
from skewforge.cli.suites import hecke_pools
from skewforge.errors import NotGInvariantFamily
from skewforge.presets import build_finite, build_gt, build_s2, gt_delta, tensor_product_rings
from skewforge.skewring import decompose_bimodule_classes, invariant_mul, make_invariant

S2 = build_s2()
G = S2.group
SWAP = AffineAut.transposition(0, 1, 2)
E = AffineAut.identity(2)
POOLS = hecke_pools()


def sh(*v):
    return AffineAut.from_shift(list(v))


def pool_pairs():
    for tag, (s, pool) in POOLS.items():
        for a, b in itertools.product(pool, repeat=2):
            yield pytest.param(s.group, a, b, id=f"{tag}-{pool.index(a)}-{pool.index(b)}")


def normalized(Gr, a, b):
    return hecke_mul(HeckeElement.basis(Gr, a), HeckeElement.basis(Gr, b)).scale(Fraction(1, Gr.order))


class TestClasses:
    def test_dimensions(self):
        assert class_dimension(simple_class(G, E)) == 1
        assert class_dimension(simple_class(G, sh(1, 0))) == 2
        gt2 = build_gt(2)
        assert class_dimension(simple_class(gt2.group, gt_delta(gt2, 1, 1))) == 1

    def test_class_equality(self):
        assert simple_class(G, sh(1, 0)) == simple_class(G, sh(0, 1))
        assert simple_class(G, sh(1, 0)) != simple_class(G, sh(2, 0))
        assert simple_class(G, compose_aut(SWAP, sh(1, 1))) == simple_class(G, sh(1, 1))


class TestTensor:
    def test_unit(self):
        c = simple_class(G, sh(2, -1))
        assert tensor_decompose(G, simple_class(G, E), c) == ClassSum.single(G, sh(2, -1))

    def test_s2_example(self):
        c = simple_class(G, sh(1, 0))
        dec = tensor_decompose(G, c, c)
        assert dec == ClassSum(G, {simple_class(G, sh(2, 0)): 1, simple_class(G, sh(1, 1)): 2})
        assert [class_dimension(k) for k, _ in dec.sorted_terms()] == [2, 1]
        assert dec.dimension() == 4

    def test_trivial_group(self):
        T = trivial_group(2)
        dec = tensor_decompose(T, simple_class(T, sh(1, 0)), simple_class(T, sh(0, 3)))
        assert dec == ClassSum.single(T, sh(1, 3))

    @pytest.mark.parametrize("Gr,a,b", list(pool_pairs()))
    def test_against_bruteforce(self, Gr, a, b):
        dec = tensor_decompose(Gr, simple_class(Gr, a), simple_class(Gr, b))
        brute = tensor_decompose_bruteforce(Gr, a, b)
        assert {c.coset: Fraction(k) for c, k in dec.terms.items()} == brute
        assert dec.dimension() == class_dimension(simple_class(Gr, a)) * class_dimension(simple_class(Gr, b))
        assert all(type(k) is int and k > 0 for k in dec.terms.values())

    def test_multiplicity_family_matches(self):
        a = b = sh(1, 0)
        fam = tensor_family(G, a, b)
        dec = tensor_decompose(G, simple_class(G, a), simple_class(G, b))
        for c, k in dec.terms.items():
            assert multiplicity_from_family(G, fam, c.rep) == k


class TestHecke:
    def test_unit(self):
        phi = sh(2, 1)
        assert normalized(G, E, phi) == HeckeElement.basis(G, phi)
        assert hecke_mul(HeckeElement.basis(G, E), HeckeElement.basis(G, phi)) == HeckeElement.basis(G, phi, G.order)

    def test_s2_example(self):
        got = normalized(G, sh(1, 0), sh(1, 0))
        want = HeckeElement.basis(G, sh(2, 0)) + HeckeElement.basis(G, compose_aut(SWAP, sh(1, 1)), 2)
        assert got == want

    def test_trivial_group(self):
        T = trivial_group(2)
        assert normalized(T, sh(1, 0), sh(0, 2)) == HeckeElement.basis(T, sh(1, 2))

    @pytest.mark.parametrize("Gr,a,b", list(pool_pairs()))
    def test_integral_and_bruteforce(self, Gr, a, b):
        hm = hecke_mul(HeckeElement.basis(Gr, a), HeckeElement.basis(Gr, b))
        assert hm.scale(Fraction(1, Gr.order)).is_nonneg_integral()
        assert hm == hecke_mul_bruteforce(Gr, a, b)

    @pytest.mark.parametrize("Gr,a,b", list(pool_pairs()))
    def test_psi_homomorphism(self, Gr, a, b):
        ca, cb = simple_class(Gr, a), simple_class(Gr, b)
        lhs = grothendieck_to_hecke(tensor_decompose(Gr, ca, cb))
        rhs = hecke_mul(grothendieck_to_hecke(ClassSum.single(Gr, a)), grothendieck_to_hecke(ClassSum.single(Gr, b)))
        assert lhs == rhs

    @given(st.lists(st.sampled_from(POOLS["s2"][1]), min_size=3, max_size=3))
    def test_associative(self, trio):
        x, y, z = (HeckeElement.basis(G, m) for m in trio)
        assert hecke_mul(hecke_mul(x, y), z) == hecke_mul(x, hecke_mul(y, z))

    def test_psi_examples(self):
        assert grothendieck_to_hecke(ClassSum.single(G, E)) == HeckeElement.basis(G, E, Fraction(1, 2))
        x = ClassSum.single(G, sh(1, 0)) + ClassSum.single(G, sh(2, 0), 2)
        want = (HeckeElement.basis(G, sh(1, 0)) + HeckeElement.basis(G, sh(2, 0), 2)).scale(Fraction(1, 2))
        assert grothendieck_to_hecke(x) == want


class TestMultiplicity:
    def test_orbit(self):
        phi = sh(1, 0)
        orb = [conjugate(g, phi) for g in G.elements]
        assert multiplicity_from_family(G, orb, phi) == 1
        assert multiplicity_from_family(G, orb + orb, phi) == 2

    def test_not_invariant(self):
        with pytest.raises(NotGInvariantFamily):
            multiplicity_from_family(G, [sh(1, 0)], sh(1, 0))


class TestTables:
    def test_text_and_json(self):
        pool = [sh(1, 0), sh(0, 1), sh(1, 1)]
        t = structure_table(G, pool)
        assert t["reps"] == [sh(0, 1), sh(1, 1)]
        text = structure_table_text(G, pool)
        assert len(text.splitlines()) == 4
        js = structure_table_json(G, pool)
        assert len(js["entries"]) == 4
        first = js["entries"][0]
        assert first["left"] == {"perm": [0, 1], "scale": ["1", "1"], "shift": ["0", "1"]}
        coeffs = sorted(p["coeff"] for p in first["product"])
        assert coeffs == ["1", "2"]


class TestFiniteMonoid:
    def test_sum(self):
        s = build_finite()
        assert finite_monoid_dimension_sum(s) == (2, 2)
        assert len(monoid_classes(s.group, s.monoid.elements_list)) == 2

    def test_tensor(self):
        s = build_finite()
        p = tensor_product_rings(s, s)
        total, size = finite_monoid_dimension_sum(p)
        assert total == size == 4

    def test_infinite_rejected(self):
        with pytest.raises(ValueError):
            finite_monoid_dimension_sum(S2)


class TestConsistencyWithRing:
    @pytest.mark.parametrize("a,b", [((1, 0), (1, 0)), ((2, 0), (1, -1)), ((1, 1), (2, 1)), ((1, 0), (0, 0))])
    def test_pure_shift_classes(self, a, b):
        phi, psi = sh(*a), sh(*b)
        x = make_invariant(S2, 1, phi)
        y = make_invariant(S2, S2.var("x1") * S2.var("x2") + 1, psi)
        ring = {dc.rep for dc in decompose_bimodule_classes(invariant_mul(x, S2.var("x1") + S2.var("x2"), y))}
        dec = tensor_decompose(G, simple_class(G, phi), simple_class(G, psi))
        pure = {c.rep for c in dec.terms if c.rep.is_pure_shift()}
        shift_dcs = {canonical_double_coset(G, compose_aut(phi, conjugate(g, psi))).rep for g in G.elements}
        assert ring == shift_dcs
        assert pure == ring
