"""Projective schemes over an exact coefficient field.

A :class:`ProjScheme` is a homogeneous ideal in P^n.  Singular loci are
computed by the Jacobian criterion for complete intersections (the only
presentations this package needs); general Fitting-ideal singular loci
are deliberately unsupported.  Zero-dimensional point sets are certified
complete by degree counting against the reduced subscheme, which rules
out further points over any field extension without ever solving.
"""

from __future__ import annotations

from . import _linalg
from .arith import TowerElement
from .groebner import (
    Ideal,
    groebner_basis,
    hilbert_dim_degree,
    ideal_intersect,
    normal_form,
    radical,
    saturate_irrelevant,
)
from .poly import Poly, jacobian, minors


class PointNotOnSchemeError(ValueError):
    def __init__(self, index, message):
        super().__init__(message)
        self.index = index


class RationalPoint:
    """A projective point, normalised so its last nonzero coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        raw = [c.raw if isinstance(c, TowerElement) else c for c in coords]
        last = None
        for i in range(len(raw) - 1, -1, -1):
            if not field.is_zero(raw[i]):
                last = i
                break
        if last is None:
            raise ValueError("projective points cannot have all coordinates zero")
        inv = field.inv(raw[last])
        self.field = field
        self.coords = tuple(field.mul(inv, c) for c in raw)

    @classmethod
    def parse(cls, field, text):
        """Comma-separated coordinates in the polynomial expression grammar."""
        from .poly import PolyRing, parse
        ring = PolyRing(field, ())
        coords = [parse(part, ring).constant_value() for part in text.split(",")]
        return cls(field, coords)

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        return (isinstance(other, RationalPoint)
                and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"RationalPoint({', '.join(self.field.coeff_str(c) for c in self.coords)})"

    def map(self, func, new_field):
        return RationalPoint(new_field, [func(c) for c in self.coords])


class PointCertificate:
    """Outcome of certifying a candidate point list on a finite scheme."""

    def __init__(self, scheme, points, reduced_degree, complete):
        self.scheme = scheme
        self.points = tuple(points)
        self.reduced_degree = reduced_degree
        self.complete = complete

    def __repr__(self):
        return (f"PointCertificate({len(self.points)} points, reduced degree "
                f"{self.reduced_degree}, complete={self.complete})")


class ProjScheme:
    """A closed subscheme of P^n given by a homogeneous ideal."""

    def __init__(self, ideal):
        for g in ideal.gens:
            if g.homogeneous_degree() is None:
                raise ValueError("scheme ideals must have homogeneous generators")
        self.ideal = ideal
        self.ring = ideal.ring
        self.ambient_dim = ideal.ring.nvars - 1

    @classmethod
    def of(cls, ring, gens):
        return cls(Ideal(ring, gens))

    def dimension(self):
        return hilbert_dim_degree(self.ideal)[0]

    def degree(self):
        return hilbert_dim_degree(self.ideal)[1]

    def codimension(self):
        return self.ambient_dim - self.dimension()

    def __repr__(self):
        return (f"ProjScheme(P^{self.ambient_dim}, "
                f"{len(self.ideal.gens)} equations)")


def singular_subscheme(X, codim):
    """Singular locus of a complete intersection, by the Jacobian criterion.

    The scheme must be presented by exactly ``codim`` generators; the
    result adds all codim x codim minors of their Jacobian.  Other
    presentations are unsupported by design.
    """
    gens = list(X.ideal.gens)
    if len(gens) != codim:
        raise NotImplementedError(
            f"Jacobian criterion needs a complete intersection presentation: "
            f"{len(gens)} generators but expected codimension {codim}")
    mins = minors(jacobian(gens), codim)
    return ProjScheme(Ideal(X.ring, gens + [m for m in mins if not m.is_zero()]))


def reduced_subscheme(X):
    """Same support with the radical ideal; dimension <= 1 only."""
    return ProjScheme(radical(X.ideal))


def union(X, Y):
    """Scheme-theoretic union V(I n J)."""
    _check_ambient(X, Y)
    return ProjScheme(ideal_intersect(X.ideal, Y.ideal))


def intersect(X, Y):
    """Scheme-theoretic intersection V(I + J)."""
    _check_ambient(X, Y)
    return ProjScheme(X.ideal + Y.ideal)


def _check_ambient(X, Y):
    if X.ring != Y.ring:
        raise ValueError("schemes in different ambient spaces")


def contains_point(X, P):
    """Whether every defining equation vanishes at P."""
    if len(P) != X.ring.nvars:
        raise ValueError("coordinate count does not match the ambient space")
    field = X.ring.field
    return all(field.is_zero(g.evaluate(P.coords)) for g in X.ideal.gens)


def points_on(X, candidates):
    """The sublist of candidate points lying on X."""
    return [P for P in candidates if contains_point(X, P)]


def certify_zero_dim_points(X, candidates):
    """Verify a candidate point list against a zero-dimensional scheme.

    Every candidate must lie on X (PointNotOnSchemeError otherwise).  The
    certificate is complete when the number of distinct candidates equals
    the degree of the reduced subscheme: no further points can then exist
    over any field extension.
    """
    dim = X.dimension()
    if dim > 0:
        raise ValueError(f"scheme has dimension {dim}, expected 0")
    for i, P in enumerate(candidates):
        if not contains_point(X, P):
            raise PointNotOnSchemeError(i, f"candidate {i} does not lie on the scheme")
    distinct = set(candidates)
    if dim == -1:
        reduced_degree = 0
    else:
        reduced_degree = hilbert_dim_degree(radical(X.ideal))[1]
    complete = len(distinct) == reduced_degree
    return PointCertificate(X, candidates, reduced_degree, complete)


def scheme_equal(X, Y):
    """Equality of the saturated ideals, i.e. equality as subschemes.

    Fast paths: identical reduced Groebner bases prove equality without
    saturating, and generators that are plain variables not appearing
    anywhere else are stripped into a smaller ambient first.
    """
    _check_ambient(X, Y)
    I, J = X.ideal, Y.ideal
    stripped = _strip_common_variable_gens(I, J)
    if stripped is not None:
        I, J = stripped
    if groebner_basis(I) == groebner_basis(J):
        return True
    return groebner_basis(saturate_irrelevant(I)) == groebner_basis(saturate_irrelevant(J))


def _strip_common_variable_gens(I, J):
    """Drop variables that appear in both ideals only as bare generators."""
    from .groebner import map_exponents
    from .poly import PolyRing

    def var_gens(K):
        out = set()
        for g in K.gens:
            if len(g.terms) == 1:
                e = next(iter(g.terms))
                if sum(e) == 1:
                    out.add(e.index(1))
        return out

    common = var_gens(I) & var_gens(J)
    if not common:
        return None
    for K in (I, J):
        for g in K.gens:
            if len(g.terms) == 1 and sum(next(iter(g.terms))) == 1:
                continue
            if any(any(e[i] for i in common) for e in g.terms):
                return None
    ring = I.ring
    keep = [i for i in range(ring.nvars) if i not in common]
    if not keep:
        return None
    sub = PolyRing(ring.field, tuple(ring.names[i] for i in keep))
    positions = [None] * ring.nvars
    for slot, i in enumerate(keep):
        positions[i] = slot

    def push(K):
        gens = []
        for g in K.gens:
            if len(g.terms) == 1:
                e = next(iter(g.terms))
                if sum(e) == 1 and e.index(1) in common:
                    continue
            gens.append(map_exponents(g, sub, positions))
        return Ideal(sub, gens)

    return push(I), push(J)


def smooth_at_points(X, pts):
    """Whether X is smooth at every one of the given points.

    Uses the Jacobian rank criterion on the given generating set of the
    (radical) ideal: a point is smooth iff the rank equals the
    codimension.  Points not on X raise.
    """
    field = X.ring.field
    codim = X.codimension()
    jac = jacobian(list(X.ideal.gens))
    for i, P in enumerate(pts):
        if not contains_point(X, P):
            raise PointNotOnSchemeError(i, f"point {i} does not lie on the scheme")
        rows = [[entry.evaluate(P.coords) for entry in row] for row in jac]
        if _linalg.rank(rows, field) != codim:
            return False
    return True


def is_ordinary_double_point(X, P):
    """Rank test for an ordinary double point on a surface in P^4.

    X must be a complete intersection of two hypersurfaces whose Jacobian
    has rank 1 at the singular point P; the quadratic cone of the local
    surface germ is then checked to be a rank-3 quadric.  This is the
    optional nodality check; the degree-counting certificates never rely
    on it.
    """
    gens = list(X.ideal.gens)
    if len(gens) != 2:
        raise NotImplementedError("node test implemented for codimension-2 "
                                  "complete intersections only")
    field = X.ring.field
    n = X.ring.nvars
    chart = max(i for i in range(n) if not field.is_zero(P.coords[i]))
    # affine chart: drop the chart variable, plug in its value 1
    from .groebner import _dehomogenize
    aff_ideal, sub = _dehomogenize(Ideal(X.ring, gens), chart)
    pt = [c for i, c in enumerate(P.coords) if i != chart]
    f, g = aff_ideal.gens
    grads = [[h.deriv(i).evaluate(pt) for i in range(sub.nvars)] for h in (f, g)]
    if _linalg.rank(grads, field) != 1:
        return False
    # combine the two equations to kill the linear part
    if any(not field.is_zero(c) for c in grads[0]):
        smooth_eq, base = f, g
        alpha_row, beta_row = grads[0], grads[1]
    else:
        smooth_eq, base = g, f
        alpha_row, beta_row = grads[1], grads[0]
    j = next(i for i, c in enumerate(alpha_row) if not field.is_zero(c))
    mu = field.mul(beta_row[j], field.inv(alpha_row[j]))
    # Hessian of base - mu*smooth_eq at the point
    def hessian(h):
        return [[h.deriv(i).deriv(k).evaluate(pt) for k in range(sub.nvars)]
                for i in range(sub.nvars)]

    Hb, Hs = hessian(base), hessian(smooth_eq)
    H = [[field.sub(a, field.mul(mu, b)) for a, b in zip(ra, rb)]
         for ra, rb in zip(Hb, Hs)]
    tangent = _linalg.kernel_basis([alpha_row], sub.nvars, field)
    gram = []
    for u in tangent:
        row = []
        for v in tangent:
            acc = field.zero
            for a in range(sub.nvars):
                if field.is_zero(u[a]):
                    continue
                for b in range(sub.nvars):
                    acc = field.add(acc, field.mul(field.mul(u[a], v[b]), H[a][b]))
            row.append(acc)
        gram.append(row)
    return _linalg.rank(gram, field) == 3
