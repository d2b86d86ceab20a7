"""Buchberger Groebner engine and the ideal operations built on it.

Covers reduced Groebner bases with the two classical pair-skipping
criteria, normal forms, elimination by block orders, ideal intersection
and quotient, saturation (with the reverse-lex shortcut for variable
saturations of homogeneous ideals), Hilbert-series dimension and degree,
degree slices, and radicals in projective dimension <= 1:

* dimension 0 by adjoining squarefree parts of the univariate eliminant
  of every variable in an affine chart containing the whole scheme;
* dimension 1 by the ideal quotient of the ideal by the codimension-size
  minors of the Jacobian of its generators (a complete-intersection
  radical formula; see :func:`radical` for the exact contract).
"""

from __future__ import annotations

import heapq
import random
import threading
from itertools import combinations

from . import _linalg
from .poly import MonomialOrder, Poly, PolyRing, apply_linear, jacobian, minors


class Ideal:
    """An ideal with cached reduced Groebner bases per monomial order."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self._gb_cache = {}
        self._lock = threading.Lock()

    def groebner(self, order=None):
        order = order or self.ring.order
        with self._lock:
            gb = self._gb_cache.get(order)
        if gb is None:
            gb = _buchberger(self, order)
            with self._lock:
                self._gb_cache[order] = gb
        return gb

    def contains(self, f):
        return normal_form(f, self.groebner()).is_zero()

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise ValueError("ideals from different rings")
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + (other,))

    def is_zero(self):
        return not self.gens

    def is_homogeneous(self):
        return all(g.homogeneous_degree() is not None for g in self.gens)

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {self.ring.names})"


class ReducedGB:
    """The unique reduced Groebner basis of an ideal for one order."""

    def __init__(self, ring, order, elements):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, ReducedGB)
                and self.ring == other.ring
                and self.order == other.order
                and self.elements == other.elements)

    def leading_exponents(self):
        return [g.leading(self.order)[0] for g in self.elements]

    def __repr__(self):
        return f"ReducedGB({len(self.elements)} elements)"


def groebner_basis(ideal, order=None):
    """Reduced Groebner basis; cached on the ideal per order."""
    return ideal.groebner(order)


def spolynomial(f, g, order=None):
    order = order or f.ring.order
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    field = f.ring.field
    mf = f.ring.monomial(tuple(a - b for a, b in zip(lcm, ef)))
    mg = f.ring.monomial(tuple(a - b for a, b in zip(lcm, eg)))
    return (f * mf).scale(field.inv(cf)) - (g * mg).scale(field.inv(cg))


def normal_form(f, gb):
    """Canonical remainder of f modulo a reduced Groebner basis."""
    if f.ring != gb.ring:
        raise ValueError("polynomial and basis from different rings")
    if not gb.elements:
        return f
    reducers = [_Reducer(g, gb.order) for g in gb.elements]
    rem = _reduce_terms(dict(f.terms), reducers, gb.order, f.ring.field)
    return Poly(f.ring, rem)


class _Reducer:
    __slots__ = ("lt", "deg", "tail")

    def __init__(self, g, order):
        terms = g.sorted_terms(order)
        lt, lc = terms[0]
        field = g.ring.field
        if lc != field.one:
            inv = field.inv(lc)
            terms = [(e, field.mul(inv, c)) for e, c in terms]
        self.lt = lt
        self.deg = sum(lt)
        self.tail = terms[1:]


def _neg_key(order, exp):
    return tuple(-v for v in order.key(exp))


def _reduce_terms(coeffs, reducers, order, field):
    """Full division remainder of a term dict by monic reducers."""
    heap = [(_neg_key(order, e), e) for e in coeffs]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = coeffs.pop(e, None)
        if c is None:
            continue
        deg_e = sum(e)
        red = None
        for r in reducers:
            if r.deg <= deg_e and _divides(r.lt, e):
                red = r
                break
        if red is None:
            remainder[e] = c
            continue
        lt = red.lt
        delta = tuple(a - b for a, b in zip(e, lt))
        for e2, c2 in red.tail:
            ne = tuple(a + b for a, b in zip(delta, e2))
            prev = coeffs.get(ne)
            if prev is None:
                v = field.neg(field.mul(c, c2))
                if not field.is_zero(v):
                    coeffs[ne] = v
                    heapq.heappush(heap, (_neg_key(order, ne), ne))
            else:
                v = field.sub(prev, field.mul(c, c2))
                if field.is_zero(v):
                    del coeffs[ne]
                else:
                    coeffs[ne] = v
    return remainder


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _buchberger(ideal, order):
    ring = ideal.ring
    field = ring.field
    basis = []
    reducers = []

    def reduce_poly(f_terms):
        return _reduce_terms(dict(f_terms), reducers, order, field)

    pairs = []
    treated = set()

    def add_poly(p):
        p = p.monic(order)
        idx = len(basis)
        lt, _ = p.leading(order)
        for i, g in enumerate(basis):
            glt = g.leading(order)[0]
            lcm = tuple(max(a, b) for a, b in zip(glt, lt))
            heapq.heappush(pairs, (sum(lcm), order.key(lcm), i, idx))
        basis.append(p)
        reducers.append(_Reducer(p, order))

    seed = sorted((g for g in ideal.gens if not g.is_zero()),
                  key=lambda g: order.key(g.leading(order)[0]))
    for g in seed:
        rem = reduce_poly(g.terms)
        if rem:
            if not any(any(e) for e in rem):
                return ReducedGB(ring, order, (ring.one(),))
            add_poly(Poly(ring, rem))

    while pairs:
        _, lcm_key, i, j = heapq.heappop(pairs)
        key = (i, j)
        fi, fj = basis[i], basis[j]
        ei = fi.leading(order)[0]
        ej = fj.leading(order)[0]
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        treated.add(key)
        # product criterion: coprime leading terms
        if all(a + b == c for a, b, c in zip(ei, ej, lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if (_divides(basis[k].leading(order)[0], lcm)
                    and (min(i, k), max(i, k)) in treated
                    and (min(j, k), max(j, k)) in treated):
                skip = True
                break
        if skip:
            continue
        s = spolynomial(fi, fj, order)
        rem = reduce_poly(s.terms)
        if rem:
            if not any(any(e) for e in rem):
                return ReducedGB(ring, order, (ring.one(),))
            add_poly(Poly(ring, rem))

    return ReducedGB(ring, order, _interreduce(basis, order, field))


def _interreduce(polys, order, field):
    polys = [p.monic(order) for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        for idx in range(len(polys)):
            others = [_Reducer(g, order) for k, g in enumerate(polys) if k != idx]
            rem = _reduce_terms(dict(polys[idx].terms), others, order, field)
            new = Poly(polys[idx].ring, rem).monic(order)
            if new.is_zero():
                del polys[idx]
                changed = True
                break
            if new != polys[idx]:
                polys[idx] = new
                changed = True
                break
    polys.sort(key=lambda g: order.key(g.leading(order)[0]))
    return polys


# -- ring plumbing -----------------------------------------------------------


def map_exponents(f, new_ring, positions):
    """Reindex variables: positions[i] = slot of old variable i, or None.

    A None slot requires exponent 0 in every term.
    """
    res = {}
    for e, c in f.terms.items():
        ne = [0] * new_ring.nvars
        for i, p in enumerate(positions):
            if p is None:
                if e[i]:
                    raise ValueError("exponent on a dropped variable")
            else:
                ne[p] = e[i]
        res[tuple(ne)] = c
    return Poly(new_ring, res)


def _fresh_names(base, count, used):
    names, i = [], 0
    while len(names) < count:
        cand = f"{base}{i}"
        if cand not in used:
            names.append(cand)
        i += 1
    return names


def _split_homogeneous(gens):
    out = []
    for g in gens:
        out.extend(g.homogeneous_components())
    return out


def eliminate(ideal, drop):
    """Intersection with the subring on the kept variables.

    ``drop`` is an iterable of variable names or indices.  Returns an
    Ideal in a fresh ring on the kept variables (ring order degrevlex).
    """
    ring = ideal.ring
    drop_idx = sorted(ring.names.index(v) if isinstance(v, str) else v
                      for v in set(drop))
    if len(drop_idx) == ring.nvars:
        raise ValueError("cannot drop every variable")
    keep_idx = [i for i in range(ring.nvars) if i not in drop_idx]
    work = PolyRing(ring.field,
                    tuple(ring.names[i] for i in drop_idx)
                    + tuple(ring.names[i] for i in keep_idx),
                    MonomialOrder.block(len(drop_idx)))
    positions = [None] * ring.nvars
    for slot, i in enumerate(drop_idx):
        positions[i] = slot
    for slot, i in enumerate(keep_idx):
        positions[i] = len(drop_idx) + slot
    work_ideal = Ideal(work, [map_exponents(g, work, positions) for g in ideal.gens])
    gb = groebner_basis(work_ideal)
    sub = PolyRing(ring.field, tuple(ring.names[i] for i in keep_idx))
    down = [None] * work.nvars
    for slot in range(len(keep_idx)):
        down[len(drop_idx) + slot] = slot
    kept = []
    for g in gb:
        if all(all(e[s] == 0 for s in range(len(drop_idx))) for e in g.terms):
            kept.append(map_exponents(g, sub, down))
    return Ideal(sub, kept)


def _eliminate_first_var_back(work_ideal, orig_ring):
    """GB-eliminate the first work variable, landing back in orig_ring."""
    gb = groebner_basis(work_ideal)
    down = [None] + list(range(orig_ring.nvars))
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            out.append(map_exponents(g, orig_ring, down))
    return out


def _with_aux_first(ring):
    aux = _fresh_names("t_", 1, set(ring.names))[0]
    work = PolyRing(ring.field, (aux,) + ring.names, MonomialOrder.block(1))
    up = list(range(1, ring.nvars + 1))
    return work, up


def ideal_intersect(I, J):
    """I n J via the one-auxiliary-variable elimination t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise ValueError("ideals from different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    work, up = _with_aux_first(ring)
    t = work.var(0)
    one_minus_t = work.one() - t
    gens = [t * map_exponents(g, work, up) for g in I.gens]
    gens += [one_minus_t * map_exponents(g, work, up) for g in J.gens]
    out = _eliminate_first_var_back(Ideal(work, gens), ring)
    if I.is_homogeneous() and J.is_homogeneous():
        out = _split_homogeneous(out)
    return Ideal(ring, _minimal_gens(out))


def _minimal_gens(gens):
    """Drop obvious redundancies (duplicates and zero polynomials)."""
    seen, out = set(), []
    for g in gens:
        if g.is_zero():
            continue
        key = frozenset(g.monic().terms.items())
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def exact_divide(g, f):
    """Quotient g/f when f divides g exactly; raises otherwise."""
    ring = g.ring
    order = ring.order
    field = ring.field
    ef, cf = f.leading(order)
    inv_cf = field.inv(cf)
    terms = dict(g.terms)
    out = {}
    while terms:
        e = max(terms, key=order.key)
        c = terms[e]
        delta = tuple(a - b for a, b in zip(e, ef))
        if any(d < 0 for d in delta):
            raise ValueError("inexact polynomial division")
        q = field.mul(c, inv_cf)
        out[delta] = q
        for e2, c2 in f.terms.items():
            ne = tuple(a + b for a, b in zip(delta, e2))
            prev = terms.get(ne, field.zero)
            v = field.sub(prev, field.mul(q, c2))
            if field.is_zero(v):
                terms.pop(ne, None)
            else:
                terms[ne] = v
    return Poly(ring, out)


def ideal_quotient(I, J):
    """The ideal quotient (I : J)."""
    if I.ring != J.ring:
        raise ValueError("ideals from different rings")
    if J.is_zero():
        raise ValueError("quotient by the zero ideal")
    result = None
    done = set()
    for f in J.gens:
        key = frozenset(f.monic().terms.items())
        if key in done:
            continue
        done.add(key)
        inter = ideal_intersect(I, Ideal(I.ring, [f]))
        quot = Ideal(I.ring, [exact_divide(g, f) for g in inter.gens])
        if result is None:
            result = quot
        elif all(quot.contains(g) for g in result.gens):
            continue
        else:
            result = ideal_intersect(result, quot)
    return result if result is not None else Ideal(I.ring, [I.ring.one()])


def _saturate_variable(I, j):
    """(I : x_j^infinity) for homogeneous I, by the reverse-lex shortcut."""
    ring = I.ring
    perm = [i for i in range(ring.nvars) if i != j] + [j]
    work = PolyRing(ring.field, tuple(ring.names[i] for i in perm))
    positions = [None] * ring.nvars
    for slot, i in enumerate(perm):
        positions[i] = slot
    gb = groebner_basis(Ideal(work, [map_exponents(g, work, positions)
                                     for g in I.gens]))
    last = work.nvars - 1
    out = []
    for g in gb:
        k = min(e[last] for e in g.terms)
        if k:
            g = Poly(work, {e[:last] + (e[last] - k,): c for e, c in g.terms.items()})
        out.append(g)
    back = [None] * work.nvars
    for slot, i in enumerate(perm):
        back[slot] = i
    return Ideal(ring, [map_exponents(g, ring, back) for g in out])


def _saturate_single(I, f):
    """(I : f^infinity) by the Rabinowitsch construction."""
    ring = I.ring
    work, up = _with_aux_first(ring)
    t = work.var(0)
    gens = [map_exponents(g, work, up) for g in I.gens]
    gens.append(t * map_exponents(f, work, up) - work.one())
    out = _eliminate_first_var_back(Ideal(work, gens), ring)
    if I.is_homogeneous() and f.homogeneous_degree() is not None:
        out = _split_homogeneous(out)
    return Ideal(ring, _minimal_gens(out))


def _is_variable(f):
    if len(f.terms) != 1:
        return None
    e = next(iter(f.terms))
    if sum(e) == 1:
        return e.index(1)
    return None


def saturate(I, J):
    """The saturation (I : J^infinity)."""
    if I.ring != J.ring:
        raise ValueError("ideals from different rings")
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    result = None
    for f in J.gens:
        j = _is_variable(f)
        if j is not None and I.is_homogeneous():
            S = _saturate_variable(I, j)
        else:
            S = _saturate_single(I, f)
        result = S if result is None else ideal_intersect(result, S)
    return result


def saturate_irrelevant(I):
    """Saturation by the irrelevant maximal ideal of a homogeneous ideal."""
    ring = I.ring
    sats = [_saturate_variable(I, j) for j in range(ring.nvars)]
    base_gb = groebner_basis(I)
    if all(groebner_basis(s) == base_gb for s in sats):
        return I
    result = sats[0]
    for s in sats[1:]:
        result = ideal_intersect(result, s)
    return result


def ideal_equal(I, J):
    """Equality as ideals, via reduced Groebner bases."""
    if I.ring != J.ring:
        return False
    return groebner_basis(I) == groebner_basis(J)


def ideal_contains_ideal(I, J):
    """Whether J is a subset of I."""
    gb = groebner_basis(I)
    return all(normal_form(g, gb).is_zero() for g in J.gens)


# -- Hilbert series ----------------------------------------------------------


def _minimalize_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_add(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def _poly_shift(a, k):
    return (0,) * k + tuple(a)


def _hilbert_numerator(lts, nvars):
    """Numerator of the Hilbert series of R/(monomial ideal) over (1-t)^n."""
    memo = {}

    def rec(gens):
        if gens in memo:
            return memo[gens]
        if not gens:
            return (1,)
        if any(not any(e) for e in gens):
            return (0,)
        if len(gens) == 1:
            d = sum(gens[0])
            res = tuple([1] + [0] * (d - 1) + [-1])
            memo[gens] = res
            return res
        supports = [tuple(i for i, e in enumerate(g) if e) for g in gens]
        if all(len(s) == 1 for s in supports) and len(set(supports)) == len(gens):
            res = (1,)
            for g in gens:
                d = sum(g)
                res = _poly_mul_z(res, tuple([1] + [0] * (d - 1) + [-1]))
            memo[gens] = res
            return res
        counts = [0] * nvars
        candidates = set()
        for g in gens:
            support = [i for i, e in enumerate(g) if e]
            for i in support:
                counts[i] += 1
            if len(support) >= 2:
                candidates.update(support)
        # a mixed-support generator exists here, so candidates is nonempty;
        # splitting on one of its variables guarantees progress
        pivot = max(candidates, key=lambda i: (counts[i], -i))
        unit = tuple(1 if i == pivot else 0 for i in range(nvars))
        plus = _minimalize_monomials(
            [g for g in gens if g[pivot] == 0] + [unit])
        colon = _minimalize_monomials(
            [g[:pivot] + (max(g[pivot] - 1, 0),) + g[pivot + 1:] for g in gens])
        res = _poly_add(rec(plus), _poly_shift(rec(colon), 1))
        memo[gens] = res
        return res

    return rec(_minimalize_monomials(lts))


def _poly_mul_z(a, b):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return tuple(res)


def hilbert_dim_degree(ideal):
    """(projective dimension, degree) from the leading-term Hilbert series.

    The empty scheme reports (-1, 0).  Requires homogeneous generators.
    """
    for g in ideal.gens:
        if g.homogeneous_degree() is None:
            raise ValueError("non-homogeneous generator")
    n = ideal.ring.nvars
    gb = groebner_basis(ideal)
    if not gb.elements:
        return (n - 1, 1)
    if len(gb.elements) == 1 and not any(any(e) for e in gb.elements[0].terms):
        return (-1, 0)
    num = _hilbert_numerator(tuple(gb.leading_exponents()), n)
    cancelled = 0
    while sum(num) == 0:
        quotient = []
        acc = 0
        for c in num:
            acc += c
            quotient.append(acc)
        while quotient and quotient[-1] == 0:
            quotient.pop()
        num = tuple(quotient)
        cancelled += 1
    dim_affine = n - cancelled
    if dim_affine == 0:
        return (-1, 0)
    return (dim_affine - 1, sum(num))


def homogeneous_part(ideal, d):
    """Basis of the degree-d slice of a homogeneous ideal."""
    if d < 0:
        raise ValueError("negative degree")
    ring = ideal.ring
    field = ring.field
    gb = groebner_basis(ideal)
    monos = ring.monomials_of_degree(d)
    nfs = [normal_form(ring.monomial(e), gb) for e in monos]
    residual = sorted({e for f in nfs for e in f.terms})
    index = {e: i for i, e in enumerate(residual)}
    rows = [[field.zero] * len(monos) for _ in residual]
    for j, f in enumerate(nfs):
        for e, c in f.terms.items():
            rows[index[e]][j] = c
    if not residual:
        vectors = [[field.one if i == j else field.zero for i in range(len(monos))]
                   for j in range(len(monos))]
    else:
        vectors = _linalg.kernel_basis(rows, len(monos), field)
    out = []
    for v in vectors:
        terms = {e: c for e, c in zip(monos, v) if not field.is_zero(c)}
        out.append(Poly(ring, terms))
    return out


# -- radicals ----------------------------------------------------------------


def _upoly_trim(f, field):
    while f and field.is_zero(f[-1]):
        f.pop()
    return f


def _upoly_divmod(f, g, field):
    f = list(f)
    g = _upoly_trim(list(g), field)
    inv = field.inv(g[-1])
    q = [field.zero] * max(0, len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        c = field.mul(f[i + len(g) - 1], inv)
        if field.is_zero(c):
            continue
        q[i] = c
        for j, y in enumerate(g):
            f[i + j] = field.sub(f[i + j], field.mul(c, y))
    return q, _upoly_trim(f, field)


def _upoly_gcd_monic(f, g, field):
    f = _upoly_trim(list(f), field)
    g = _upoly_trim(list(g), field)
    while g:
        _, r = _upoly_divmod(f, g, field)
        f, g = g, r
    inv = field.inv(f[-1])
    return [field.mul(inv, c) for c in f]


def _upoly_deriv(f, field):
    return [field.mul(field.from_rational(i), c) for i, c in enumerate(f)][1:]


def _upoly_squarefree(f, field):
    g = _upoly_gcd_monic(f, _upoly_deriv(f, field), field)
    if len(g) == 1:
        return list(f)
    q, r = _upoly_divmod(f, g, field)
    if r:
        raise ArithmeticError("squarefree part division was inexact")
    return q


def _quotient_basis(gb, cap=200000):
    """Standard monomials of a zero-dimensional affine leading-term ideal."""
    ring = gb.ring
    lts = gb.leading_exponents()
    start = (0,) * ring.nvars
    seen = {start}
    queue = [start]
    out = []
    while queue:
        e = queue.pop()
        if any(_divides(l, e) for l in lts):
            continue
        out.append(e)
        if len(out) > cap:
            raise ValueError("leading-term ideal is not zero-dimensional")
        for i in range(ring.nvars):
            ne = e[:i] + (e[i] + 1,) + e[i + 1:]
            if ne not in seen:
                seen.add(ne)
                queue.append(ne)
    return sorted(out, key=gb.order.key)


def _eliminant(gb, qbasis, var):
    """Monic generator of (ideal) n k[x_var], via Krylov iteration."""
    ring = gb.ring
    field = ring.field
    index = {e: i for i, e in enumerate(qbasis)}
    dim = len(qbasis)
    x = ring.var(var)
    rows = []  # echelon rows: (pivot, vector, combination)
    cur = ring.one()
    power = 0
    while True:
        vec = [field.zero] * dim
        for e, c in cur.terms.items():
            vec[index[e]] = c
        comb = [field.zero] * (power + 1)
        comb[power] = field.one
        for pivot, rvec, rcomb in rows:
            c = vec[pivot]
            if field.is_zero(c):
                continue
            vec = [field.sub(a, field.mul(c, b)) for a, b in zip(vec, rvec)]
            tail = [field.mul(c, b) for b in rcomb]
            comb = [field.sub(a, b) for a, b in
                    zip(comb, tail + [field.zero] * (len(comb) - len(tail)))]
        nz = next((i for i, v in enumerate(vec) if not field.is_zero(v)), None)
        if nz is None:
            inv = field.inv(comb[power])
            return [field.mul(inv, c) for c in comb]
        inv = field.inv(vec[nz])
        rows.append((nz,
                     [field.mul(inv, v) for v in vec],
                     [field.mul(inv, c) for c in comb]))
        cur = normal_form(cur * x, gb)
        power += 1
        if power > dim + 1:
            raise RuntimeError("Krylov iteration failed to terminate")


def _dehomogenize(ideal, j):
    ring = ideal.ring
    sub = PolyRing(ring.field, tuple(n for i, n in enumerate(ring.names) if i != j))
    positions = [None] * ring.nvars
    slot = 0
    for i in range(ring.nvars):
        if i != j:
            positions[i] = slot
            slot += 1
    gens = []
    for g in ideal.gens:
        terms = {}
        field = ring.field
        for e, c in g.terms.items():
            ne = tuple(e[i] for i in range(ring.nvars) if i != j)
            prev = terms.get(ne)
            if prev is None:
                terms[ne] = c
            else:
                s = field.add(prev, c)
                if field.is_zero(s):
                    del terms[ne]
                else:
                    terms[ne] = s
        gens.append(Poly(sub, terms))
    return Ideal(sub, gens), sub


def _homogenize_poly(g, ring, j):
    d = g.degree()
    res = {}
    for e, c in g.terms.items():
        ne = list(e)
        ne.insert(j, d - sum(e))
        res[tuple(ne)] = c
    return Poly(ring, res)


def _find_affine_chart(ideal):
    """A linear form vanishing nowhere on a zero-dimensional scheme.

    Returns ('var', j) or ('linear', poly).  Deterministic search:
    variables from the last, then seeded small-coefficient forms.
    """
    ring = ideal.ring
    for j in reversed(range(ring.nvars)):
        test = Ideal(ring, list(ideal.gens) + [ring.var(j)])
        if hilbert_dim_degree(test)[0] == -1:
            return ("var", j)
    rng = random.Random(20110104)
    for _ in range(200):
        coeffs = [rng.randrange(0, 41) for _ in range(ring.nvars)]
        if not any(coeffs):
            continue
        L = ring.zero()
        for i, c in enumerate(coeffs):
            if c:
                L = L + ring.var(i).scale(ring.field.from_rational(c))
        test = Ideal(ring, list(ideal.gens) + [L])
        if hilbert_dim_degree(test)[0] == -1:
            return ("linear", L)
    raise RuntimeError("no affine chart found for the zero-dimensional scheme")


def _chart_transform(ideal, L):
    """Change coordinates so the linear form L becomes the last variable."""
    ring = ideal.ring
    field = ring.field
    n = ring.nvars
    coeffs = [field.zero] * n
    for e, c in L.terms.items():
        coeffs[e.index(1)] = c
    pivot = max(i for i, c in enumerate(coeffs) if not field.is_zero(c))
    B = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    B[pivot] = coeffs
    B[pivot], B[n - 1] = B[n - 1], B[pivot]
    Binv = _linalg.invert_matrix(B, field)
    fwd = [apply_linear(g, Binv) for g in ideal.gens]
    return Ideal(ring, fwd), B


def _radical_zero_dim(ideal):
    ring = ideal.ring
    kind, data = _find_affine_chart(ideal)
    back_matrix = None
    work = ideal
    if kind == "var":
        j = data
    else:
        work, back_matrix = _chart_transform(ideal, data)
        j = ring.nvars - 1
    aff, sub = _dehomogenize(work, j)
    gb = groebner_basis(aff)
    qb = _quotient_basis(gb)
    adjoined = []
    for var in range(sub.nvars):
        elim = _eliminant(gb, qb, var)
        sq = _upoly_squarefree(elim, sub.field)
        if len(sq) == len(elim):
            # the eliminant is already squarefree, hence already in the ideal
            continue
        terms = {}
        for i, c in enumerate(sq):
            if not sub.field.is_zero(c):
                e = tuple(i if k == var else 0 for k in range(sub.nvars))
                terms[e] = c
        adjoined.append(Poly(sub, terms))
    if adjoined:
        # Seidenberg: the ideal plus the squarefree eliminant parts is radical
        rad_gb = groebner_basis(Ideal(sub, list(gb.elements) + adjoined))
    else:
        rad_gb = gb
    out = [_homogenize_poly(g, ring, j) for g in rad_gb]
    if back_matrix is not None:
        out = [apply_linear(g, back_matrix) for g in out]
    return Ideal(ring, out)


def _peel_linear(ideal):
    """Substitute away homogeneous linear generators; returns lift data."""
    ring = ideal.ring
    gens = list(ideal.gens)
    linear_forms = []
    while True:
        lin = next((g for g in gens if g.homogeneous_degree() == 1), None)
        if lin is None or ring.nvars <= 2:
            break
        field = ring.field
        coeffs = {e.index(1): c for e, c in lin.terms.items()}
        pivot = max(coeffs)
        inv = field.inv(coeffs[pivot])
        image = ring.zero()
        for i, c in coeffs.items():
            if i != pivot:
                image = image - ring.var(i).scale(field.mul(inv, c))
        sub = PolyRing(field, tuple(n for i, n in enumerate(ring.names) if i != pivot))
        positions = [None] * ring.nvars
        slot = 0
        for i in range(ring.nvars):
            if i != pivot:
                positions[i] = slot
                slot += 1
        new_gens = []
        for g in gens:
            if g is lin:
                continue
            h = g.substitute(pivot, image)
            if not h.is_zero():
                new_gens.append(map_exponents(h, sub, positions))
        linear_forms.append((ring, pivot, lin))
        ring, gens = sub, new_gens
    return Ideal(ring, gens), linear_forms


def _lift_through_linear(gens, linear_forms):
    for ring, pivot, lin in reversed(linear_forms):
        positions = [i for i in range(ring.nvars) if i != pivot]
        gens = [map_exponents(g, ring, positions) for g in gens] + [lin]
    return gens


def _radical_dim_one(ideal):
    peeled, linear_forms = _peel_linear(ideal)
    ring = peeled.ring
    if not peeled.gens:
        base = list(_lift_through_linear([], linear_forms))
        return Ideal(ideal.ring, base)
    dim, _ = hilbert_dim_degree(peeled)
    codim = (ring.nvars - 1) - dim
    if codim <= 0:
        lifted = _lift_through_linear(list(peeled.gens), linear_forms)
        return Ideal(ideal.ring, lifted)
    jac = jacobian(list(peeled.gens))
    mins = _minimal_gens(minors(jac, codim))
    rad = ideal_quotient(peeled, Ideal(ring, mins))
    if len(peeled.gens) != codim and not ideal_equal(rad, peeled):
        # The quotient-by-Jacobian-minors formula is a theorem for
        # complete intersections; for other unmixed presentations the
        # quotient equalling the ideal certifies that it is already
        # radical (generically smooth along every component, no embedded
        # primes), and anything else is outside this routine's contract.
        raise NotImplementedError(
            "dimension-1 radical needs a complete intersection "
            "presentation or an already-radical ideal")
    lifted = _lift_through_linear(list(rad.gens), linear_forms)
    return Ideal(ideal.ring, lifted)


def radical(ideal):
    """Radical of a homogeneous ideal of projective dimension <= 1.

    Dimension 0 uses squarefree univariate eliminants in an affine chart
    containing the scheme; the result is the saturated radical.
    Dimension 1 (after substituting away linear generators) uses the
    quotient of the ideal by the codimension-size minors of the Jacobian
    of its generators.  That formula is a theorem for complete
    intersections in characteristic 0; for other presentations the
    routine only accepts ideals it can certify as already radical, and
    raises otherwise.  Unmixedness of dimension-1 inputs is a
    precondition (complete intersections satisfy it automatically).
    """
    gb = groebner_basis(ideal)
    if len(gb.elements) == 1 and not any(any(e) for e in gb.elements[0].terms):
        return Ideal(ideal.ring, [ideal.ring.one()])
    dim, _ = hilbert_dim_degree(ideal)
    if dim == -1:
        return Ideal(ideal.ring, list(ideal.ring.gens()))
    if dim == 0:
        return _radical_zero_dim(ideal)
    if dim == 1:
        return _radical_dim_one(ideal)
    raise NotImplementedError(
        f"radical in projective dimension {dim} is not supported (max 1)")
