import random

import pytest

from klab import (
    Group,
    IntMatrix,
    InvalidElementError,
    InvalidSpecError,
    UnsupportedError,
    direct_sum,
    direct_sum_with_embeddings,
    format_element,
    parse_element,
    quotient,
    smith_normal_form,
)
from oracles import invariant_factors_by_minor_gcd


def random_matrix(rng, max_dim=5, lo=-9, hi=9):
    r = rng.randint(1, max_dim)
    c = rng.randint(1, max_dim)
    return IntMatrix([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)])


def assert_snf_contract(m):
    u, d, v = smith_normal_form(m)
    assert (u @ m @ v) == d
    assert u.det() in (1, -1)
    assert v.det() in (1, -1)
    diag = d.diagonal()
    for i in range(d.nrows):
        for j in range(d.ncols):
            if i != j:
                assert d.rows[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    if m.nrows == m.ncols:
        prod = 1
        for e in diag:
            prod *= e
        assert abs(m.det()) == prod
    return diag


class TestSmithNormalForm:
    def test_diag_2_3(self):
        m = IntMatrix([[2, 0], [0, 3]])
        # oracle: determinantal divisors give (1, 6)
        assert invariant_factors_by_minor_gcd(m) == (1, 6)
        _, d, _ = smith_normal_form(m)
        assert d.diagonal() == (1, 6)

    def test_identity(self):
        m = IntMatrix.identity(4)
        u, d, v = smith_normal_form(m)
        assert d == IntMatrix.identity(4)
        assert (u @ m @ v) == d

    def test_zero_1x1(self):
        _, d, _ = smith_normal_form(IntMatrix([[0]]))
        assert d.rows == ((0,),)

    def test_contract_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(120):
            m = random_matrix(rng)
            diag = assert_snf_contract(m)
            assert diag == invariant_factors_by_minor_gcd(m)

    def test_rectangular_shapes(self):
        for rows in ([[2, 4, 6]], [[2], [4], [6]], [[0, 0], [0, 0], [0, 0]]):
            assert_snf_contract(IntMatrix(rows))


class TestGroupCanonicalization:
    def test_from_parts_2_3(self):
        assert Group.from_parts(0, [2, 3]) == Group(0, (6,))

    def test_free_already_canonical(self):
        assert Group.from_parts(2, []) == Group(2)

    def test_from_parts_4_2(self):
        # oracle: gcd of 1x1 minors of diag(4,2) is 2, determinant is 8
        assert invariant_factors_by_minor_gcd(IntMatrix([[4, 0], [0, 2]])) == (2, 4)
        assert Group.from_parts(0, [4, 2]) == Group(0, (2, 4))

    def test_commutativity_small_orders(self):
        for a in range(2, 13):
            for b in range(2, 13):
                assert Group.from_parts(0, [a, b]) == Group.from_parts(0, [b, a])

    def test_torsion_below_2_rejected(self):
        with pytest.raises(InvalidSpecError):
            Group.from_parts(0, [1, 3])
        with pytest.raises(InvalidSpecError):
            Group.parse("C1")

    def test_chain_validated(self):
        with pytest.raises(InvalidSpecError):
            Group(0, (4, 2))

    def test_parse_round_trip(self):
        for spec in ["trivial", "C2", "C6", "Z", "Z^2 x C2 x C6", "C2 x C2"]:
            g = Group.parse(spec)
            assert Group.parse(g.spec_string()) == g

    def test_parse_compact(self):
        assert Group.parse("C2xC3").spec_string() == "C6"


class TestDirectSum:
    def test_c2_c3(self):
        assert direct_sum([Group.parse("C2"), Group.parse("C3")]) == Group.parse("C6")

    def test_trivial_identity(self):
        g = Group.parse("Z x C4")
        assert direct_sum([g, Group.trivial()]) == g

    def test_c2_c2(self):
        assert direct_sum([Group.parse("C2"), Group.parse("C2")]) == Group(0, (2, 2))

    def test_associativity_up_to_canonical_form(self):
        gs = [Group.parse("C4"), Group.parse("C6"), Group.parse("Z")]
        assert direct_sum([direct_sum(gs[:2]), gs[2]]) == direct_sum(gs)

    def test_embeddings_generate_and_have_right_orders(self):
        gs = [Group.parse("C2"), Group.parse("C3"), Group.parse("C2xC2"), Group.parse("C5")]
        total, embeddings = direct_sum_with_embeddings(gs)
        assert total.order() == 120
        gens = [e for comp in embeddings for e in comp]
        q, _ = quotient(total, gens)
        assert q.is_trivial
        for g, comp in zip(gs, embeddings):
            for gen, expect in zip(comp, g.generators()):
                assert gen.order() == expect.order()


class TestQuotient:
    def test_z2_mod_lattice(self):
        g = Group(2)
        q, proj = quotient(g, [g.element([2, 0]), g.element([0, 3])])
        assert q == Group.parse("C6")
        assert proj(g.element([2, 0])).is_zero
        assert proj(g.element([0, 3])).is_zero
        # the projection is a homomorphism onto the quotient
        img = proj(g.element([1, 1]))
        assert (img + img + img + img + img + img).is_zero

    def test_empty_relations(self):
        for spec in ["C6", "Z x C2", "C2 x C4", "trivial"]:
            g = Group.parse(spec)
            q, proj = quotient(g, [])
            assert q == g

    def test_quotient_by_generators_is_trivial(self):
        for spec in ["C6", "C2 x C4", "Z^2", "Z x C3", "trivial"]:
            g = Group.parse(spec)
            q, _ = quotient(g, list(g.generators()))
            assert q.is_trivial

    def test_z_mod_generator(self):
        g = Group(1)
        q, _ = quotient(g, [g.element([1])])
        assert q.is_trivial

    def test_foreign_element_rejected(self):
        g = Group.parse("C4")
        h = Group.parse("C2xC2")
        with pytest.raises(InvalidElementError):
            quotient(g, [h.zero()])

    def test_projection_is_additive(self):
        rng = random.Random(3)
        g = Group.parse("Z x C4 x C8")
        rels = [g.element([2], [1, 0]), g.element([0], [0, 4])]
        q, proj = quotient(g, rels)
        for _ in range(40):
            x = g.element([rng.randint(-9, 9)], [rng.randint(0, 3), rng.randint(0, 7)])
            y = g.element([rng.randint(-9, 9)], [rng.randint(0, 3), rng.randint(0, 7)])
            assert proj(x + y) == proj(x) + proj(y)


class TestElements:
    def test_modular_addition(self):
        g = Group.parse("C6")
        assert g.element([], [4]) + g.element([], [5]) == g.element([], [3])

    def test_neg_zero(self):
        g = Group.parse("C6")
        assert -g.zero() == g.zero()

    def test_scale_mixed(self):
        g = Group.parse("Z x C2")
        assert 3 * g.element([1], [1]) == g.element([3], [1])

    def test_mixed_group_operands_rejected(self):
        with pytest.raises(InvalidElementError):
            Group.parse("C2").zero() + Group.parse("C3").zero()

    def test_abelian_axioms_randomized(self, small_groups):
        rng = random.Random(11)

        def rand_elt(g):
            return g.element(
                [rng.randint(-5, 5) for _ in range(g.free_rank)],
                [rng.randint(0, d - 1) for d in g.invariant_factors],
            )

        for g in small_groups + [Group.parse("Z x C4"), Group.parse("Z^2 x C2 x C6")]:
            for _ in range(25):
                x, y, z = rand_elt(g), rand_elt(g), rand_elt(g)
                assert (x + y) + z == x + (y + z)
                assert x + y == y + x
                assert x + g.zero() == x
                assert (x + (-x)).is_zero
                n = rng.randint(-4, 4)
                assert n * (x + y) == n * x + n * y

    def test_order_examples(self):
        c6 = Group.parse("C6")
        assert c6.element([], [2]).order() == 3
        assert c6.zero().order() == 1
        assert Group(1).element([5]).order() is None

    def test_order_divides_exponent(self, small_groups):
        for g in small_groups:
            if not g.is_finite:
                continue
            e = g.exponent()
            for x in g.elements():
                assert e % x.order() == 0


class TestInvariants:
    def test_exponent_and_rank_examples(self):
        assert Group.parse("C2xC2").exponent() == 2
        assert Group.parse("C2xC2").rank() == 2
        assert Group.parse("C6").exponent() == 6
        assert Group.parse("C6").rank() == 1
        zc4 = Group.parse("Z x C4")
        assert zc4.exponent() is None
        # p-rank at p = 2 counts the free rank plus the factors divisible by 2
        assert zc4.rank() == 2
        assert Group.trivial().exponent() == 1
        assert Group.trivial().rank() == 0

    def test_elements_enumeration(self):
        g = Group.parse("C2xC2")
        elts = list(g.elements())
        assert len(elts) == 4
        assert len(set(elts)) == 4
        with pytest.raises(UnsupportedError):
            list(Group(1).elements())


class TestElementSerialization:
    def test_round_trip_full_form(self):
        g = Group.parse("Z x C2 x C6")
        x = g.element([-3], [1, 5])
        assert format_element(x) == "([-3],[1,5])"
        assert parse_element(format_element(x), g) == x

    def test_short_forms(self):
        c3 = Group.parse("C3")
        assert parse_element("2", c3) == c3.element([], [2])
        assert format_element(c3.element([], [2]), short=True) == "2"
        c22 = Group.parse("C2xC2")
        assert parse_element("(1,0)", c22) == c22.element([], [1, 0])

    def test_bad_literals(self):
        c22 = Group.parse("C2xC2")
        with pytest.raises(InvalidElementError):
            parse_element("5", c22)
        with pytest.raises(InvalidElementError):
            parse_element("(1,2,3)", c22)
        with pytest.raises(InvalidElementError):
            parse_element("nonsense(", c22)
