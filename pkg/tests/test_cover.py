import pytest

from helpers import run_character_additivity, run_chi_consistency
from nodalcover.arith import mpq
from nodalcover.cover import (
    BranchAssignment,
    CertificateError,
    CharClassData,
    PartitionSearchError,
    SurfaceInvariants,
    TropeTable,
    branch_char_set,
    canonical_factors,
    chi_cover,
    chi_nodal,
    gf2_certify,
    ksq_cover,
    pairing,
    partition_search,
    pg_cover,
    quotient_data,
    trope_pair_set,
)

A, B, C = 1, 2, 4
AB, AC, BC, ABC = 3, 5, 6, 7


@pytest.fixture(scope="module")
def paper_assignment(x40_data):
    return x40_data.assignment


@pytest.fixture(scope="module")
def trope_table(x40_ctx):
    return x40_ctx.trope_table


def test_pairing():
    assert pairing(1, 1) == 1
    assert pairing(1, 6) == 0
    assert pairing(7, 7) == 1  # three bits, odd parity


class TestBranchAssignment:
    def test_disjointness_enforced(self):
        with pytest.raises(ValueError):
            BranchAssignment(2, {1: frozenset({1}), 2: frozenset({1})})

    def test_generation_enforced(self):
        with pytest.raises(ValueError):
            BranchAssignment(2, {1: frozenset({1, 2})})

    def test_single_branch_r1(self):
        b = BranchAssignment(1, {1: frozenset({1, 2, 3})})
        assert branch_char_set(b, 1) == {1, 2, 3}

    def test_trivial_character_rejected(self, paper_assignment):
        with pytest.raises(ValueError):
            branch_char_set(paper_assignment, 0)


class TestCharSums:
    def test_chi_100_is_24_nodes(self, paper_assignment):
        s = branch_char_set(paper_assignment, A)
        expected = frozenset().union(*(paper_assignment.parts[k]
                                       for k in (A, ABC, AC, AB)))
        assert s == expected and len(s) == 24

    def test_chi_111_is_16_nodes(self, paper_assignment):
        s = branch_char_set(paper_assignment, ABC)
        expected = frozenset().union(*(paper_assignment.parts[k]
                                       for k in (A, B, C, ABC)))
        assert s == expected and len(s) == 16


class TestTropePairs:
    def test_first_pair_has_20_nodes(self, trope_table):
        assert len(trope_pair_set(trope_table, 1, 2)) == 20

    def test_pair_with_itself_is_empty(self, trope_table):
        assert trope_pair_set(trope_table, 3, 3) == frozenset()

    def test_two_pairs_cover_everything(self, trope_table):
        s1 = trope_pair_set(trope_table, 1, 2)
        s2 = trope_pair_set(trope_table, 6, 7)
        assert len(s1 ^ s2) == 40

    def test_unknown_trope(self, trope_table):
        with pytest.raises(KeyError):
            trope_pair_set(trope_table, 1, 99)

    def test_twelve_node_validation(self):
        with pytest.raises(ValueError):
            TropeTable({1: frozenset({1, 2, 3})})


class TestCertificates:
    def test_empty_certificate(self, trope_table):
        cert = gf2_certify(frozenset(), trope_table)
        assert cert.pairs == ()
        assert cert.verify(trope_table)

    def test_24_node_set_certificate(self, trope_table, paper_assignment):
        target = branch_char_set(paper_assignment, A)
        cert = gf2_certify(target, trope_table)
        assert cert.verify(trope_table)
        assert cert.replay(trope_table) == target

    def test_odd_cardinality_fails_with_rank(self, trope_table):
        with pytest.raises(CertificateError) as err:
            gf2_certify(frozenset({1}), trope_table)
        assert err.value.span_rank > 0


class TestPartitionSearch:
    def test_finds_the_40_node_partition(self, trope_table, x40_data):
        sizes = {A: 4, B: 4, C: 4, ABC: 4, BC: 8, AC: 8, AB: 8}
        found = partition_search(trope_table, frozenset(range(1, 41)), sizes)
        assert sorted(len(v) for v in found.parts.values()) == [4, 4, 4, 4, 8, 8, 8]
        assert found.nodes() == frozenset(range(1, 41))

    def test_bundled_assignment_among_all_solutions(self, trope_table,
                                                    paper_assignment):
        sizes = {A: 4, B: 4, C: 4, ABC: 4, BC: 8, AC: 8, AB: 8}
        sols = partition_search(trope_table, frozenset(range(1, 41)), sizes,
                                all_solutions=True)
        assert len(sols) == 24
        assert any(s.parts == paper_assignment.parts for s in sols)

    def test_empty_universe(self, trope_table):
        sizes = {sigma: 0 for sigma in range(1, 8)}
        found = partition_search(trope_table, frozenset(), sizes)
        assert found.nodes() == frozenset()

    def test_size_mismatch(self, trope_table):
        sizes = {sigma: 1 for sigma in range(1, 8)}
        with pytest.raises(ValueError):
            partition_search(trope_table, frozenset(range(1, 41)), sizes)

    def test_impossible_sizes_fail(self, trope_table):
        sizes = {A: 40, B: 0, C: 0, ABC: 0, BC: 0, AC: 0, AB: 0}
        with pytest.raises(PartitionSearchError):
            partition_search(trope_table, frozenset(range(1, 41)), sizes)


class TestInvariantFormulas:
    def test_chi_cover_r0(self):
        assert chi_cover(0, 6, []) == 6

    def test_chi_cover_paper_values(self):
        data = [CharClassData.nodal(chi, 16 if chi == ABC else 24)
                for chi in range(1, 8)]
        assert chi_cover(3, 6, data) == 8

    def test_chi_cover_etale(self):
        data = [CharClassData(chi, 0, 0, 0) for chi in range(1, 8)]
        assert chi_cover(3, 6, data) == 48

    def test_chi_cover_missing_character(self):
        with pytest.raises(ValueError):
            chi_cover(3, 6, [CharClassData.nodal(1, 24)])

    @pytest.mark.parametrize("args,expected", [
        ((3, 6, 40), 8),
        ((2, 6, 36), 6),
        ((4, 7, 0), 112),
    ])
    def test_chi_nodal(self, args, expected):
        assert chi_nodal(*args) == expected

    def test_pg_cover(self):
        assert pg_cover(5, [2, 0, 0, 0, 0, 0, 0]) == 7
        assert pg_cover(5, []) == 5
        assert pg_cover(5, [0] * 7) == 5
        with pytest.raises(ValueError):
            pg_cover(5, [-1])

    @pytest.mark.parametrize("args,expected", [
        ((3, 8), 64),
        ((0, 11), 11),
        ((2, 8), 32),
    ])
    def test_ksq_cover(self, args, expected):
        assert ksq_cover(*args) == expected

    def test_canonical_factors(self):
        assert canonical_factors(5, 5)
        assert canonical_factors(7, 7)
        assert not canonical_factors(7, 5)

    def test_surface_invariants_validation(self):
        SurfaceInvariants(chi=8, pg=7, q=0, ksq=64)
        with pytest.raises(ValueError):
            SurfaceInvariants(chi=8, pg=7, q=1, ksq=64)


class TestQuotientData:
    def test_quotient_by_c(self, paper_assignment):
        q = quotient_data(paper_assignment, (0, C), 6)
        assert (q.m, q.node_count, q.chi) == (36, 16, 6)

    def test_quotient_by_klein_group(self, paper_assignment):
        q = quotient_data(paper_assignment, (0, AB, AC, BC), 6)
        assert (q.m, q.node_count, q.chi) == (16, 48, 8)

    def test_full_group_and_identity(self, paper_assignment):
        full = quotient_data(paper_assignment, tuple(range(8)), 6)
        assert (full.m, full.node_count, full.chi) == (0, 40, 6)
        triv = quotient_data(paper_assignment, (0,), 6)
        assert (triv.m, triv.node_count, triv.chi) == (40, 0, 8)

    def test_non_subgroup_rejected(self, paper_assignment):
        with pytest.raises(ValueError):
            quotient_data(paper_assignment, (0, A, B), 6)
        with pytest.raises(ValueError):
            quotient_data(paper_assignment, (A,), 6)


def test_chi_consistency_quick():
    assert run_chi_consistency(40, seed=51) == 40


def test_character_additivity_quick():
    assert run_character_additivity(40, seed=53) == 40


def test_q_vanishes_for_all_quotients(paper_assignment):
    # q = p_g - chi + 1 with p_g = chi - 1 across the quotient diagram
    for H in [(0,), (0, AB), (0, AB, AC, BC), (0, C), (0, C, AB, ABC),
              tuple(range(8))]:
        q = quotient_data(paper_assignment, H, 6)
        pg = int(mpq(q.chi)) - 1
        assert pg - q.chi + 1 == 0
