import random

import pytest

from helpers import random_poly, run_groebner_properties, run_hilbert_points
from nodalcover.arith import PrimeField
from nodalcover.groebner import (
    Ideal,
    eliminate,
    exact_divide,
    groebner_basis,
    hilbert_dim_degree,
    homogeneous_part,
    ideal_equal,
    ideal_intersect,
    ideal_quotient,
    normal_form,
    radical,
    saturate,
    saturate_irrelevant,
    spolynomial,
)
from nodalcover.poly import MonomialOrder, PolyRing, apply_linear, parse


@pytest.fixture(scope="module")
def x40_ideal(x40_ctx):
    return x40_ctx.surface.ideal


def gb_strings(gb):
    return sorted(str(g) for g in gb)


def test_groebner_linear(ring_xy):
    I = Ideal(ring_xy, [parse("x", ring_xy), parse("x + y", ring_xy)])
    assert gb_strings(groebner_basis(I)) == ["x", "y"]


def test_groebner_principal(ring_xy):
    I = Ideal(ring_xy, [parse("x^2*y", ring_xy)])
    assert gb_strings(groebner_basis(I)) == ["x^2*y"]


def test_groebner_drops_zero_generators(ring_xy):
    I = Ideal(ring_xy, [ring_xy.zero(), parse("x", ring_xy)])
    assert gb_strings(groebner_basis(I)) == ["x"]


def test_groebner_unit_ideal(ring_xy):
    I = Ideal(ring_xy, [parse("x", ring_xy), parse("x + 1", ring_xy)])
    assert gb_strings(groebner_basis(I)) == ["1"]


def test_normal_form_of_generators_vanishes(x40_ideal):
    gb = groebner_basis(x40_ideal)
    for g in x40_ideal.gens:
        assert normal_form(g, gb).is_zero()
    assert normal_form(x40_ideal.ring.zero(), gb).is_zero()


def test_membership_of_random_combination(x40_ideal):
    ring = x40_ideal.ring
    rng = random.Random(5)
    Q, I = x40_ideal.gens
    gb = groebner_basis(x40_ideal)
    for _ in range(5):
        a = random_poly(ring, rng, max_terms=3, max_deg=2)
        b = random_poly(ring, rng, max_terms=2, max_deg=0)
        assert normal_form(a * Q + b * I, gb).is_zero()


def test_normal_form_ring_mismatch(ring_xy, ring_xyz):
    gb = groebner_basis(Ideal(ring_xy, [parse("x", ring_xy)]))
    with pytest.raises(ValueError):
        normal_form(parse("x", ring_xyz), gb)


def test_normal_form_linear_and_idempotent(ring_xyz):
    rng = random.Random(9)
    I = Ideal(ring_xyz, [parse("x^2 - y*z", ring_xyz), parse("y^2 - x*z", ring_xyz)])
    gb = groebner_basis(I)
    for _ in range(20):
        f, g = random_poly(ring_xyz, rng), random_poly(ring_xyz, rng)
        nf, ng = normal_form(f, gb), normal_form(g, gb)
        assert normal_form(f + g, gb) == nf + ng
        assert normal_form(nf, gb) == nf


def test_eliminate_no_relation_survives(ring_xy):
    I = Ideal(ring_xy, [parse("x - y", ring_xy)])
    assert eliminate(I, ["x"]).gens == ()


def test_eliminate_forces_y(ring_xy):
    I = Ideal(ring_xy, [parse("x - y", ring_xy), parse("x", ring_xy)])
    out = eliminate(I, ["x"])
    assert [str(g) for g in out.gens] == ["y"]


def test_eliminate_everything_raises(ring_xy):
    with pytest.raises(ValueError):
        eliminate(Ideal(ring_xy, [parse("x", ring_xy)]), ["x", "y"])


def test_rabinowitsch_elimination_realizes_saturation(qq):
    # <x^2 y> : x^infinity = <y> via eliminating t from <t*x - 1, x^2 y>
    ring = PolyRing(qq, ("t", "x", "y"), MonomialOrder.block(1))
    I = Ideal(ring, [parse("t*x - 1", ring), parse("x^2*y", ring)])
    out = eliminate(I, ["t"])
    assert [str(g) for g in out.gens] == ["y"]


def test_quotient_and_saturation(ring_xy):
    x2y = Ideal(ring_xy, [parse("x^2*y", ring_xy)])
    x = Ideal(ring_xy, [parse("x", ring_xy)])
    assert gb_strings(groebner_basis(ideal_quotient(x2y, x))) == ["x*y"]
    sat = saturate(x2y, x)
    assert gb_strings(groebner_basis(sat)) == ["y"]
    # saturation stabilizes
    assert ideal_equal(saturate(sat, x), sat)


def test_quotient_by_zero_raises(ring_xy):
    I = Ideal(ring_xy, [parse("x", ring_xy)])
    with pytest.raises(ValueError):
        ideal_quotient(I, Ideal(ring_xy, []))
    with pytest.raises(ValueError):
        saturate(I, Ideal(ring_xy, []))


def test_intersection_of_coordinate_ideals(ring_xy):
    I = Ideal(ring_xy, [parse("x", ring_xy)])
    J = Ideal(ring_xy, [parse("y", ring_xy)])
    assert gb_strings(groebner_basis(ideal_intersect(I, J))) == ["x*y"]


def test_exact_division(ring_xy):
    f = parse("x^2*y + x*y^2", ring_xy)
    g = parse("x*y", ring_xy)
    assert str(exact_divide(f, g)) == "x + y"
    with pytest.raises(ValueError):
        exact_divide(parse("x^2 + y", ring_xy), g)


class TestHilbert:
    def test_single_point(self, qr):
        ring = PolyRing(qr, ("x", "y", "z", "w", "t"))
        gens = [parse(s, ring) for s in ("x - t", "y - t", "z - t", "w - t")]
        assert hilbert_dim_degree(Ideal(ring, gens)) == (0, 1)

    def test_complete_intersection_surface(self, x40_ideal):
        # Bezout oracle: a (2,4) complete intersection has dimension 2, degree 8
        assert hilbert_dim_degree(x40_ideal) == (2, 8)

    def test_zero_ideal_is_ambient(self, ring_xyz):
        assert hilbert_dim_degree(Ideal(ring_xyz, [])) == (2, 1)

    def test_unit_ideal_is_empty(self, ring_xyz):
        one = ring_xyz.one()
        assert hilbert_dim_degree(Ideal(ring_xyz, [one])) == (-1, 0)

    def test_non_homogeneous_raises(self, ring_xy):
        with pytest.raises(ValueError):
            hilbert_dim_degree(Ideal(ring_xy, [parse("x + y^2", ring_xy)]))

    def test_random_point_ideals(self, qq):
        ring = PolyRing(PrimeField(101), ("x", "y", "z", "w"))
        run_hilbert_points(ring, trials=4, seed=31)

    def test_invariance_under_linear_change(self, x40_ideal):
        ring = x40_ideal.ring
        field = ring.field
        rng = random.Random(13)
        from nodalcover import _linalg
        while True:
            M = [[field.from_rational(rng.randint(-3, 3)) for _ in range(5)]
                 for _ in range(5)]
            if _linalg.invert_matrix(M, field) is not None:
                break
        moved = Ideal(ring, [apply_linear(g, M) for g in x40_ideal.gens])
        assert hilbert_dim_degree(moved) == (2, 8)


class TestHomogeneousPart:
    def test_degree_two_slice_is_the_quadric(self, x40_ideal):
        sl = homogeneous_part(x40_ideal, 2)
        assert len(sl) == 1
        Q = x40_ideal.gens[0]
        assert sl[0].monic() == Q.monic()

    def test_degree_one_slice_empty(self, x40_ideal):
        assert homogeneous_part(x40_ideal, 1) == []

    def test_degree_three_slice_of_principal(self, x40_ideal):
        ring = x40_ideal.ring
        only_q = Ideal(ring, [x40_ideal.gens[0]])
        assert len(homogeneous_part(only_q, 3)) == 5

    def test_negative_degree_raises(self, x40_ideal):
        with pytest.raises(ValueError):
            homogeneous_part(x40_ideal, -1)


class TestRadical:
    def test_doubled_point_in_p1(self, ring_xy):
        I = Ideal(ring_xy, [parse("x^2", ring_xy)])
        assert gb_strings(groebner_basis(radical(I))) == ["x"]

    def test_zero_dimensional_fat_points(self, ring_xyz):
        I = Ideal(ring_xyz, [parse("x^2", ring_xyz), parse("y^2", ring_xyz)])
        rad = radical(I)
        assert gb_strings(groebner_basis(rad)) == ["x", "y"]
        assert hilbert_dim_degree(rad) == (0, 1)

    def test_contains_input_and_idempotent(self, ring_xyz):
        # a non-reduced curve in P^2 with a complete-intersection presentation
        I = Ideal(ring_xyz, [parse("x^2*y", ring_xyz)])
        rad = radical(I)
        assert gb_strings(groebner_basis(rad)) == ["x*y"]
        gb = groebner_basis(rad)
        for g in I.gens:
            assert normal_form(g, gb).is_zero()
        rad2 = radical(rad)
        assert ideal_equal(rad, rad2)
        assert hilbert_dim_degree(rad)[1] <= hilbert_dim_degree(I)[1]

    def test_radical_of_reduced_non_ci_curve_is_fixed(self, qr):
        # twisted cubic: radical, equidimensional, not a complete intersection
        ring = PolyRing(qr, ("x", "y", "z", "w"))
        gens = [parse(s, ring) for s in ("x*z - y^2", "y*w - z^2", "x*w - y*z")]
        I = Ideal(ring, gens)
        assert hilbert_dim_degree(I) == (1, 3)
        assert ideal_equal(radical(I), I)

    def test_non_ci_non_radical_curve_raises(self, ring_xyz):
        # embedded structure with no complete-intersection presentation
        I = Ideal(ring_xyz, [parse("x^2*y", ring_xyz), parse("x*y^2", ring_xyz)])
        with pytest.raises(NotImplementedError):
            radical(I)

    def test_dimension_two_unsupported(self, qr):
        ring = PolyRing(qr, ("x", "y", "z", "w"))
        with pytest.raises(NotImplementedError):
            radical(Ideal(ring, [parse("x", ring)]))

    def test_unit_ideal(self, ring_xy):
        I = Ideal(ring_xy, [ring_xy.one()])
        assert gb_strings(groebner_basis(radical(I))) == ["1"]


def test_saturate_irrelevant_fixes_saturated(x40_ideal):
    assert ideal_equal(saturate_irrelevant(x40_ideal), x40_ideal)


def test_saturate_irrelevant_strips_junk(ring_xy):
    # <x> cap m^2 : irrelevant junk around a single point of P^1
    I = Ideal(ring_xy, [parse("x^2", ring_xy), parse("x*y", ring_xy)])
    sat = saturate_irrelevant(I)
    assert gb_strings(groebner_basis(sat)) == ["x"]


def test_spolynomial_reduces_in_gb(ring_xyz):
    I = Ideal(ring_xyz, [parse("x^2 - y*z", ring_xyz), parse("x*y - z^2", ring_xyz)])
    gb = groebner_basis(I)
    for i in range(len(gb.elements)):
        for j in range(i + 1, len(gb.elements)):
            s = spolynomial(gb.elements[i], gb.elements[j], gb.order)
            assert normal_form(s, gb).is_zero()


def test_groebner_property_suite_quick():
    ring = PolyRing(PrimeField(101), ("x", "y", "z"))
    assert run_groebner_properties(ring, ideals=25, seed=41) == 25


def test_groebner_property_suite_exact(qr):
    ring = PolyRing(qr, ("x", "y"))
    assert run_groebner_properties(ring, ideals=6, seed=43) == 6
