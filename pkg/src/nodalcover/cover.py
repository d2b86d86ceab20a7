"""Combinatorics and numerology of (Z/2)^r coverings branched on nodes.

Group elements and characters are bit-vectors of length r encoded as
ints; the pairing chi(sigma) is the parity of the bitwise AND.  Node
sets are frozensets of node identifiers.  2-divisibility of a node set
is witnessed by a GF(2) combination of symmetric differences of trope
node sets (each trope is a hyperplane section 2T with T through 12
nodes, so each pair of tropes certifies one 2-divisible set).

The invariant formulas implemented here, for a (Z/2)^r covering with
branch data D_sigma and characters chi:

* chi(O_Y) = 2^r chi(O_X) + (1/2) sum over chi != 0 of (L_chi^2 + K.L_chi)
* p_g(Y)   = p_g(X) + sum over chi != 0 of h0(K_X + L_chi)
* for coverings branched on m nodes: chi(O_Y) = 2^r (chi(O_X) - m/8),
  with L_chi^2 = -n_chi/2 and K.L_chi = 0 for each character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .arith import mpq


class CertificateError(ValueError):
    """Target set outside the GF(2) span of the trope-pair sets."""

    def __init__(self, message, span_rank):
        super().__init__(message)
        self.span_rank = span_rank


class PartitionSearchError(RuntimeError):
    """Exhaustive search found no branch assignment."""


def pairing(chi, sigma):
    """chi(sigma) in {0, 1}: parity of the bitwise AND."""
    return bin(chi & sigma).count("1") & 1


def group_elements(r, nonzero=False):
    return list(range(1 if nonzero else 0, 1 << r))


def is_subgroup(r, elements):
    elems = set(elements)
    if 0 not in elems:
        return False
    return all((a ^ b) in elems for a in elems for b in elems)


def spans_group(r, elements):
    """Whether the given elements generate (Z/2)^r."""
    basis = []
    for v in elements:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis) == r


@dataclass(frozen=True)
class BranchAssignment:
    """Disjoint node sets D_sigma for the nonzero group elements."""

    r: int
    parts: dict

    def __post_init__(self):
        seen = set()
        for sigma, nodes in self.parts.items():
            if not 0 < sigma < (1 << self.r):
                raise ValueError(f"{sigma} is not a nonzero group element")
            if seen & nodes:
                raise ValueError("branch node sets must be pairwise disjoint")
            seen |= nodes
        support = [s for s, nodes in self.parts.items() if nodes]
        if support and not spans_group(self.r, support):
            raise ValueError("nonempty branch sets must generate the group")

    def nodes(self):
        out = set()
        for nodes in self.parts.values():
            out |= nodes
        return frozenset(out)

    def sigma_of(self, node):
        for sigma, nodes in self.parts.items():
            if node in nodes:
                return sigma
        return None

    def sizes(self):
        return {sigma: len(nodes) for sigma, nodes in self.parts.items()}


@dataclass(frozen=True)
class TropeTable:
    """Trope identifier -> the 12-node set it passes through."""

    sets: dict

    def __post_init__(self):
        for tid, nodes in self.sets.items():
            if len(nodes) != 12:
                raise ValueError(f"trope {tid} passes through {len(nodes)} nodes, "
                                 "expected 12")

    def ids(self):
        return sorted(self.sets)


@dataclass(frozen=True)
class DivisibilityCertificate:
    """Trope pairs whose symmetric differences XOR to the target set."""

    target: frozenset
    pairs: tuple

    def replay(self, table):
        acc = frozenset()
        for t1, t2 in self.pairs:
            acc ^= trope_pair_set(table, t1, t2)
        return acc

    def verify(self, table):
        return self.replay(table) == self.target


@dataclass(frozen=True)
class CharClassData:
    """Numerical data of one nonzero character of the covering group."""

    chi: int
    n_nodes: int
    l_sq: object
    k_dot_l: object
    h0: int = 0

    @classmethod
    def nodal(cls, chi, n_nodes, h0=0):
        """Character data for a covering branched on nodes only."""
        return cls(chi, n_nodes, l_sq=-mpq(n_nodes, 2), k_dot_l=mpq(0), h0=h0)


@dataclass(frozen=True)
class SurfaceInvariants:
    chi: object
    pg: int
    q: int
    ksq: object

    def __post_init__(self):
        if self.q != self.pg - self.chi + 1:
            raise ValueError("q must equal p_g - chi + 1")
        if self.q < 0:
            raise ValueError("negative irregularity")


def branch_char_set(assignment, chi):
    """Union of the D_sigma over sigma pairing to 1 with the character."""
    if chi == 0:
        raise ValueError("the trivial character has no branch sum")
    out = set()
    for sigma, nodes in assignment.parts.items():
        if pairing(chi, sigma):
            out |= nodes
    return frozenset(out)


def trope_pair_set(table, t1, t2):
    """Symmetric difference of two trope node sets (2-divisible on the surface)."""
    for t in (t1, t2):
        if t not in table.sets:
            raise KeyError(f"unknown trope id {t}")
    return frozenset(table.sets[t1] ^ table.sets[t2])


def _masks(universe):
    order = sorted(universe)
    index = {node: i for i, node in enumerate(order)}
    return order, index


def gf2_certify(target, table):
    """Express a node set in the GF(2) span of all trope-pair sets.

    Returns a DivisibilityCertificate; raises CertificateError (carrying
    the span rank) when the target is outside the span.
    """
    universe = set(target)
    for nodes in table.sets.values():
        universe |= nodes
    order, index = _masks(universe)

    def mask(nodes):
        m = 0
        for node in nodes:
            m |= 1 << index[node]
        return m

    ids = table.ids()
    gens = []
    for t1, t2 in combinations(ids, 2):
        gens.append(((t1, t2), mask(table.sets[t1] ^ table.sets[t2])))
    # Gaussian elimination over GF(2), tracking combinations as pair lists
    rows = []  # (pivot_bit, mask, pair_set)
    rank = 0
    tmask = mask(target)
    tcomb = set()
    for pair, m in gens:
        comb = {pair}
        for pivot, rm, rcomb in rows:
            if m >> pivot & 1:
                m ^= rm
                comb ^= rcomb
        if m:
            pivot = m.bit_length() - 1
            rows.append((pivot, m, comb))
            rank += 1
    for pivot, rm, rcomb in rows:
        if tmask >> pivot & 1:
            tmask ^= rm
            tcomb ^= rcomb
    if tmask:
        raise CertificateError(
            f"set is not in the GF(2) span of the trope-pair sets (rank {rank})",
            span_rank=rank)
    cert = DivisibilityCertificate(frozenset(target), tuple(sorted(tcomb)))
    return cert


def partition_search(table, universe, sizes, all_solutions=False):
    """Find branch assignments for r = 3 from trope 2-divisibility data.

    Enumerates ordered triples of trope pairs (lexicographically over the
    table's ids) as candidate certificates for the three basis-character
    sums; the candidate sums are the complements of the pair sets.  Each
    node's group element is decoded from its membership pattern across
    the three sums, the size profile is checked, and the three sums must
    carry GF(2) certificates.  Returns the first assignment found, or a
    list of all of them when ``all_solutions`` is set.

    ``sizes`` maps each nonzero element of (Z/2)^3 to its required size.
    """
    universe = frozenset(universe)
    if sum(sizes.values()) != len(universe):
        raise ValueError("sizes must add up to the size of the node universe")
    ids = table.ids()
    pairs = list(combinations(ids, 2))
    solutions = []
    seen = set()
    for triple in _ordered_triples(pairs):
        assignment = _try_triple(table, universe, sizes, triple)
        if assignment is None:
            continue
        key = tuple(sorted((s, tuple(sorted(n))) for s, n in assignment.parts.items()))
        if key in seen:
            continue
        seen.add(key)
        if not all_solutions:
            return assignment
        solutions.append(assignment)
    if all_solutions:
        return solutions
    raise PartitionSearchError(
        "no branch assignment with the requested sizes exists for these tropes")


def _ordered_triples(pairs):
    for p1 in pairs:
        for p2 in pairs:
            if p2 == p1:
                continue
            for p3 in pairs:
                if p3 == p1 or p3 == p2:
                    continue
                yield (p1, p2, p3)


def _try_triple(table, universe, sizes, triple):
    sums = []
    for t1, t2 in triple:
        s = universe - trope_pair_set(table, t1, t2)
        sums.append(s)
    parts = {sigma: set() for sigma in range(1, 8)}
    for node in universe:
        sigma = ((node in sums[0])
                 | (node in sums[1]) << 1
                 | (node in sums[2]) << 2)
        if sigma == 0:
            return None
        parts[sigma].add(node)
    for sigma in range(1, 8):
        if len(parts[sigma]) != sizes[sigma]:
            return None
    # all three basis sums must be 2-divisible via the trope pairs
    try:
        for s in sums:
            gf2_certify(s, table)
    except CertificateError:
        return None
    return BranchAssignment(3, {s: frozenset(n) for s, n in parts.items()})


def chi_cover(r, chi_x, data):
    """Holomorphic Euler characteristic of a smooth (Z/2)^r covering."""
    expected = set(range(1, 1 << r))
    got = {d.chi for d in data}
    if got != expected:
        missing = sorted(expected - got)
        raise ValueError(f"missing character data for {missing}")
    total = mpq(0)
    for d in data:
        total += mpq(d.l_sq) + mpq(d.k_dot_l)
    return (1 << r) * mpq(chi_x) + total / 2


def pg_cover(pg_x, h0s):
    """Geometric genus of the covering: p_g(X) + sum of h0(K_X + L_chi)."""
    if any(h < 0 for h in h0s):
        raise ValueError("h0 values cannot be negative")
    return pg_x + sum(h0s)


def chi_nodal(r, chi_x, m):
    """chi of a (Z/2)^r covering branched on m nodes: 2^r (chi(X) - m/8)."""
    if m < 0:
        raise ValueError("negative node count")
    return (1 << r) * (mpq(chi_x) - mpq(m, 8))


def ksq_cover(r, ksq_x):
    """K^2 scales by the covering degree when branched only on nodes."""
    return (1 << r) * ksq_x


def canonical_factors(pg_cover_value, pg_base_value):
    """The canonical map factors through the covering iff the genera agree."""
    return pg_cover_value == pg_base_value


@dataclass(frozen=True)
class QuotientData:
    subgroup: tuple
    m: int            # nodes of X branching the covering Y/H -> X
    node_count: int   # nodes on the quotient surface Y/H
    chi: object
    pg: int = None


def quotient_data(assignment, subgroup, chi_x):
    """Branch count, node count and chi of the quotient Y/H -> X.

    For H a subgroup of (Z/2)^r: the covering Y/H -> X is branched on the
    nodes whose sigma lies outside H; each node with sigma in H minus the
    identity contributes [G:H] nodes to Y/H.
    """
    r = assignment.r
    elems = tuple(sorted(set(subgroup)))
    if not is_subgroup(r, elems):
        raise ValueError(f"{elems} is not a subgroup of (Z/2)^{r}")
    quotient_order = (1 << r) // len(elems)
    m = 0
    interior = 0
    for sigma, nodes in assignment.parts.items():
        if sigma not in elems:
            m += len(nodes)
        elif sigma != 0:
            interior += len(nodes)
    node_count = quotient_order * interior
    chi = chi_nodal(quotient_order.bit_length() - 1, chi_x, m)
    return QuotientData(elems, m, node_count, chi)
