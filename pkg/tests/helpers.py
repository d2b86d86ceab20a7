"""Shared generators and property-suite drivers for the tests.

The acceptance suite reruns these drivers at the full advertised case
counts; the unit tests call them with smaller counts for quick feedback.
All randomness is seeded by the caller.
"""

from __future__ import annotations

import random

from nodalcover.arith import FieldTower, find_prime_reduction, mpq, reduce_mod_p
from nodalcover.cover import (
    BranchAssignment,
    CharClassData,
    branch_char_set,
    chi_cover,
    chi_nodal,
)
from nodalcover.groebner import (
    Ideal,
    groebner_basis,
    hilbert_dim_degree,
    ideal_intersect,
    normal_form,
    spolynomial,
)
from nodalcover.poly import Poly, PolyRing


def random_rational(rng, span=30):
    num = rng.randint(-span, span)
    den = rng.randint(1, 12)
    return mpq(num, den)


def random_tower_element(tower, rng, span=30):
    value = tower.zero
    for index in range(tower.levels):
        coeff = tower.from_rational(random_rational(rng, span))
        value = tower.add(value, tower.mul(coeff, tower.gen_raw(index)))
    return tower.add(value, tower.from_rational(random_rational(rng, span)))


def run_field_axioms(tower, cases, seed):
    """Associativity, commutativity, distributivity, inverses; counts cases."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(cases):
        a = random_tower_element(tower, rng)
        b = random_tower_element(tower, rng)
        c = random_tower_element(tower, rng)
        assert tower.add(tower.add(a, b), c) == tower.add(a, tower.add(b, c))
        assert tower.mul(tower.mul(a, b), c) == tower.mul(a, tower.mul(b, c))
        assert tower.add(a, b) == tower.add(b, a)
        assert tower.mul(a, b) == tower.mul(b, a)
        assert tower.mul(a, tower.add(b, c)) == \
            tower.add(tower.mul(a, b), tower.mul(a, c))
        if not tower.is_zero(a):
            assert tower.mul(a, tower.inv(a)) == tower.one
        checked += 1
    return checked


def run_reduction_homomorphism(tower, cases, seed, floor=1000):
    """reduce_mod_p is a ring homomorphism on random element pairs."""
    red = find_prime_reduction(tower, floor=floor)
    gf = red.field
    rng = random.Random(seed)
    checked = 0
    for _ in range(cases):
        a = random_tower_element(tower, rng)
        b = random_tower_element(tower, rng)
        fa, fb = red.apply(a), red.apply(b)
        assert red.apply(tower.add(a, b)) == gf.add(fa, fb)
        assert red.apply(tower.mul(a, b)) == gf.mul(fa, fb)
        checked += 1
    return checked


def random_poly(ring, rng, max_terms=4, max_deg=3, span=8):
    terms = {}
    field = ring.field
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            exp[rng.randrange(ring.nvars)] += 1
        coeff = field.from_rational(rng.randint(-span, span))
        if not field.is_zero(coeff):
            terms[tuple(exp)] = coeff
    return Poly(ring, {}) + Poly(ring, terms)


def run_groebner_properties(ring, ideals, seed):
    """S-polynomial reduction, idempotence, permutation invariance.

    ``ideals`` is the number of random small ideals to exercise.
    """
    rng = random.Random(seed)
    checked = 0
    while checked < ideals:
        gens = [random_poly(ring, rng) for _ in range(rng.randint(2, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        I = Ideal(ring, gens)
        gb = groebner_basis(I)
        for i in range(len(gb.elements)):
            for j in range(i + 1, len(gb.elements)):
                s = spolynomial(gb.elements[i], gb.elements[j], gb.order)
                assert normal_form(s, gb).is_zero()
        again = groebner_basis(Ideal(ring, list(gb.elements)))
        assert again == gb
        perm = list(gens)
        rng.shuffle(perm)
        assert groebner_basis(Ideal(ring, perm)) == gb
        for g in gens:
            assert normal_form(g, gb).is_zero()
        checked += 1
    return checked


def random_projective_point(ring, rng):
    from nodalcover.scheme import RationalPoint
    field = ring.field
    while True:
        coords = [field.from_rational(rng.randint(-9, 9)) for _ in range(ring.nvars)]
        if any(not field.is_zero(c) for c in coords):
            return RationalPoint(field, coords)


def point_ideal(ring, point):
    """The homogeneous ideal of one projective point (n linear forms)."""
    from nodalcover import _linalg
    field = ring.field
    rows = [list(point.coords)]
    forms = []
    for v in _linalg.kernel_basis(rows, ring.nvars, field):
        f = ring.zero()
        for i, c in enumerate(v):
            if not field.is_zero(c):
                f = f + ring.var(i).scale(c)
        forms.append(f)
    return Ideal(ring, forms)


def run_hilbert_points(ring, trials, seed, max_points=6):
    """Ideals of k distinct points have dimension 0 and degree k."""
    rng = random.Random(seed)
    for _ in range(trials):
        k = rng.randint(1, max_points)
        pts = []
        while len(pts) < k:
            P = random_projective_point(ring, rng)
            if P not in pts:
                pts.append(P)
        ideal = point_ideal(ring, pts[0])
        for P in pts[1:]:
            ideal = ideal_intersect(ideal, point_ideal(ring, P))
        assert hilbert_dim_degree(ideal) == (0, k)
    return trials


def random_branch_assignment(rng, r, max_nodes=24):
    """A random valid assignment: disjoint D_sigma whose supports span."""
    while True:
        n = rng.randint(r, max_nodes)
        parts = {sigma: set() for sigma in range(1, 1 << r)}
        for node in range(1, n + 1):
            parts[rng.randint(1, (1 << r) - 1)].add(node)
        support = [s for s, nodes in parts.items() if nodes]
        from nodalcover.cover import spans_group
        if spans_group(r, support):
            return BranchAssignment(r, {s: frozenset(v) for s, v in parts.items()}), n


def run_chi_consistency(cases, seed):
    """chi_cover with nodal data equals chi_nodal, over random assignments."""
    rng = random.Random(seed)
    for _ in range(cases):
        r = rng.randint(1, 4)
        assignment, m = random_branch_assignment(rng, r)
        chi_x = mpq(rng.randint(-5, 10))
        data = [CharClassData.nodal(chi, len(branch_char_set(assignment, chi)))
                for chi in range(1, 1 << r)]
        assert chi_cover(r, chi_x, data) == chi_nodal(r, chi_x, m)
        total = sum(d.n_nodes for d in data)
        assert total == (1 << (r - 1)) * m
    return cases


def run_character_additivity(cases, seed):
    rng = random.Random(seed)
    for _ in range(cases):
        r = rng.randint(1, 4)
        assignment, _ = random_branch_assignment(rng, r)
        chi1 = rng.randint(1, (1 << r) - 1)
        chi2 = rng.randint(1, (1 << r) - 1)
        if chi1 == chi2:
            continue
        lhs = branch_char_set(assignment, chi1 ^ chi2)
        rhs = branch_char_set(assignment, chi1) ^ branch_char_set(assignment, chi2)
        assert lhs == rhs
    return cases
