"""Linear systems of degree-d hypersurfaces.

A :class:`LinSys` is a linearly independent family of homogeneous
degree-d forms in a fixed ring.  Subsystems through schemes use normal
forms against a Groebner basis of the scheme ideal (correct for
non-saturated presentations); subsystems through points use the kernel
of the evaluation matrix.  Everything is exact linear algebra over the
coefficient field.

A note on conventions: dimensions reported here are vector-space
dimensions (section counts), not projective dimensions.  The classical
"dimension" of a linear system is one less.
"""

from __future__ import annotations

from math import comb

from . import _linalg
from .groebner import groebner_basis, homogeneous_part, normal_form
from .poly import Poly


class LinSys:
    """A linear system: ring, degree, and an independent basis of forms."""

    def __init__(self, ring, degree, basis):
        self.ring = ring
        self.degree = degree
        self.basis = tuple(basis)
        for f in self.basis:
            if f.ring != ring:
                raise ValueError("basis element from a different ring")
            if f.homogeneous_degree() != degree:
                raise ValueError(f"basis element is not homogeneous of degree {degree}")

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f"LinSys(degree {self.degree}, dim {self.dim})"

    def vectors(self):
        monos = self.ring.monomials_of_degree(self.degree)
        index = {e: i for i, e in enumerate(monos)}
        field = self.ring.field
        rows = []
        for f in self.basis:
            row = [field.zero] * len(monos)
            for e, c in f.terms.items():
                row[index[e]] = c
            rows.append(row)
        return monos, rows


def complete_system(ring, d):
    """All degree-d forms; dimension C(n+d, d) in P^n."""
    if ring.nvars < 2 or d < 1:
        raise ValueError("need an ambient P^n with n >= 1 and degree >= 1")
    return LinSys(ring, d, [ring.monomial(e) for e in ring.monomials_of_degree(d)])


def expected_complete_dim(n, d):
    return comb(n + d, d)


def through_scheme(L, Z):
    """The subsystem of members containing the scheme Z."""
    if L.ring != Z.ring:
        raise ValueError("system and scheme in different ambient spaces")
    field = L.ring.field
    gb = groebner_basis(Z.ideal)
    nfs = [normal_form(f, gb) for f in L.basis]
    residual = sorted({e for f in nfs for e in f.terms})
    if not residual:
        return L
    index = {e: i for i, e in enumerate(residual)}
    rows = [[field.zero] * L.dim for _ in residual]
    for j, f in enumerate(nfs):
        for e, c in f.terms.items():
            rows[index[e]][j] = c
    kernel = _linalg.kernel_basis(rows, L.dim, field)
    return _combine(L, kernel)


def through_points(L, pts):
    """The subsystem vanishing at every given point."""
    if not pts:
        return L
    field = L.ring.field
    rows = [[f.evaluate(P.coords) for f in L.basis] for P in pts]
    kernel = _linalg.kernel_basis(rows, L.dim, field)
    return _combine(L, kernel)


def _combine(L, vectors):
    basis = []
    for v in vectors:
        f = L.ring.zero()
        for c, g in zip(v, L.basis):
            if not L.ring.field.is_zero(c):
                f = f + g.scale(c)
        basis.append(f)
    return LinSys(L.ring, L.degree, basis)


def trace_dimension(L, X):
    """dim of the restriction of L to X, with a basis of representatives.

    Returns (dim L - dim(L n I_X in degree d), representatives): members
    of L spanning the traced system modulo forms vanishing on X.
    """
    if L.ring != X.ring:
        raise ValueError("system and scheme in different ambient spaces")
    field = L.ring.field
    if L.dim == 0:
        return 0, []
    slice_basis = homogeneous_part(X.ideal, L.degree)
    monos = L.ring.monomials_of_degree(L.degree)
    index = {e: i for i, e in enumerate(monos)}

    def vec(f):
        row = [field.zero] * len(monos)
        for e, c in f.terms.items():
            row[index[e]] = c
        return row

    slice_rows = [vec(f) for f in slice_basis]
    rref, pivots = _linalg.row_reduce(slice_rows, field)
    reps = []
    kept_rows = [list(r) for r in rref[:len(pivots)]]
    kept_pivots = list(pivots)
    for f in L.basis:
        row = vec(f)
        for r, pc in zip(kept_rows, kept_pivots):
            c = row[pc]
            if not field.is_zero(c):
                row = [field.sub(a, field.mul(c, b)) for a, b in zip(row, r)]
        piv = next((i for i, v in enumerate(row) if not field.is_zero(v)), None)
        if piv is None:
            continue
        reps.append(f)
        inv = field.inv(row[piv])
        kept_rows.append([field.mul(inv, v) for v in row])
        kept_pivots.append(piv)
    return len(reps), reps
