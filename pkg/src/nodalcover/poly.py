"""Sparse multivariate polynomials over an exact coefficient field.

A :class:`Poly` stores a map from exponent tuples to nonzero raw
coefficients of its ring's field (see :mod:`nodalcover.arith` for the
field protocol).  Monomial orders are total, multiplicative well-orders;
``degrevlex`` is the default, ``block`` orders drive elimination.

The expression grammar accepted by :func:`parse` has identifiers,
integer and ``a/b`` rational literals, ``+ - * ^`` and parentheses;
division is only allowed between integer literals and there is no
implicit juxtaposition.  Identifiers resolve to ring variables, tower
generators (scalars) or declared macros, in that order.
"""

from __future__ import annotations

import re
from itertools import combinations

from .arith import TowerElement, mpq


class ParseError(ValueError):
    """Malformed polynomial text."""


class MonomialOrder:
    """degrevlex, lex, or a two-block degrevlex order for elimination."""

    def __init__(self, kind, split=None):
        if kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if (kind == "block") != (split is not None):
            raise ValueError("block orders need a split point, others none")
        self.kind = kind
        self.split = split
        self._cache = {}

    @classmethod
    def degrevlex(cls):
        return cls("degrevlex")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def block(cls, split):
        return cls("block", split)

    def key(self, exp):
        """Sort key: key(a) > key(b) iff monomial a > monomial b."""
        k = self._cache.get(exp)
        if k is None:
            k = self._key(exp)
            self._cache[exp] = k
        return k

    def _key(self, exp):
        if self.kind == "lex":
            return exp
        if self.kind == "degrevlex":
            return _drl_key(exp)
        return _drl_key(exp[:self.split]) + _drl_key(exp[self.split:])

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and (self.kind, self.split) == (other.kind, other.split))

    def __hash__(self):
        return hash((self.kind, self.split))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder.block({self.split})"
        return f"MonomialOrder.{self.kind}()"


def _drl_key(exp):
    return (sum(exp),) + tuple(-e for e in reversed(exp))


class PolyRing:
    """A polynomial ring: coefficient field, ordered variables, order."""

    def __init__(self, field, names, order=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        gen_names = getattr(field, "names", ())
        clash = set(names) & set(gen_names)
        if clash:
            raise ValueError(f"variable names shadow tower generators: {clash}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order if order is not None else MonomialOrder.degrevlex()
        self._zero_exp = (0,) * self.nvars

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self._zero_exp: self.field.one})

    def const(self, value):
        """Constant polynomial from an int, rational, raw or TowerElement."""
        if isinstance(value, TowerElement):
            if value.tower != self.field:
                raise ValueError("constant from a different tower")
            raw = value.raw
        elif isinstance(value, (int, type(mpq(0)))):
            raw = self.field.from_rational(value)
        else:
            raw = value
        if self.field.is_zero(raw):
            return self.zero()
        return Poly(self, {self._zero_exp: raw})

    def var(self, i):
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {exp: self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp):
        return Poly(self, {tuple(exp): self.field.one})

    def monomials_of_degree(self, d):
        """All exponent tuples of total degree d, in a fixed order."""
        out = []

        def rec(prefix, remaining, slots):
            if slots == 1:
                out.append(prefix + (remaining,))
                return
            for e in range(remaining, -1, -1):
                rec(prefix + (e,), remaining - e, slots - 1)

        if self.nvars == 0:
            return [()] if d == 0 else []
        rec((), d, self.nvars)
        return out

    def __eq__(self, other):
        return (isinstance(other, PolyRing)
                and self.field == other.field
                and self.names == other.names
                and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.names})"


class Poly:
    """Immutable sparse polynomial; no zero coefficients are stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- ring operations -------------------------------------------------

    def _check(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        field = self.ring.field
        res = dict(self.terms)
        for e, c in other.terms.items():
            if e in res:
                s = field.add(res[e], c)
                if field.is_zero(s):
                    del res[e]
                else:
                    res[e] = s
            else:
                res[e] = c
        return Poly(self.ring, res)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        field = self.ring.field
        res = dict(self.terms)
        for e, c in other.terms.items():
            if e in res:
                s = field.sub(res[e], c)
                if field.is_zero(s):
                    del res[e]
                else:
                    res[e] = s
            else:
                res[e] = field.neg(c)
        return Poly(self.ring, res)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        field = self.ring.field
        return Poly(self.ring, {e: field.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        field = self.ring.field
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = field.mul(c1, c2)
                if e in res:
                    s = field.add(res[e], p)
                    if field.is_zero(s):
                        del res[e]
                    else:
                        res[e] = s
                elif not field.is_zero(p):
                    res[e] = p
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c):
        """Multiply by a raw field scalar."""
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, {e: field.mul(c, v) for e, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ---------------------------------------------------------

    def sorted_terms(self, order=None):
        """Terms as (exp, coeff) pairs, largest monomial first."""
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading(self, order=None):
        """(exponent, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order=None):
        if not self.terms:
            return self
        _, c = self.leading(order)
        field = self.ring.field
        if c == field.one:
            return self
        return self.scale(field.inv(c))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self):
        """Common total degree of all terms, or None if not homogeneous."""
        if not self.terms:
            raise ValueError("zero polynomial has no homogeneous degree")
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def homogeneous_components(self):
        """Split into homogeneous parts, ascending degree."""
        parts = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return [Poly(self.ring, parts[d]) for d in sorted(parts)]

    def constant_value(self):
        """Raw coefficient of the constant term (the value, if constant)."""
        for e, c in self.terms.items():
            if any(e):
                raise ValueError("polynomial is not constant")
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def deriv(self, i):
        """Partial derivative with respect to variable i."""
        field = self.ring.field
        res = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = field.mul(field.from_rational(e[i]), c)
            if field.is_zero(d):
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            res[ne] = d
        return Poly(self.ring, res)

    def evaluate(self, coords):
        """Exact value at a point; coords are raw values or TowerElements."""
        if len(coords) != self.ring.nvars:
            raise ValueError(
                f"{self.ring.nvars} coordinates expected, got {len(coords)}")
        field = self.ring.field
        raw = [c.raw if isinstance(c, TowerElement) else c for c in coords]
        powers = [{0: field.one} for _ in raw]

        def power(i, n):
            cache = powers[i]
            if n not in cache:
                cache[n] = field.mul(power(i, n - 1), raw[i])
            return cache[n]

        acc = field.zero
        for e, c in self.terms.items():
            v = c
            for i, n in enumerate(e):
                if n:
                    v = field.mul(v, power(i, n))
            acc = field.add(acc, v)
        return acc

    def evaluate_poly(self, images):
        """Substitute a polynomial for every variable simultaneously."""
        ring = images[0].ring if images else self.ring
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable required")
        acc = ring.zero()
        powers = [{0: ring.one()} for _ in images]

        def power(i, n):
            cache = powers[i]
            if n not in cache:
                cache[n] = power(i, n - 1) * images[i]
            return cache[n]

        for e, c in self.terms.items():
            v = ring.const(c)
            for i, n in enumerate(e):
                if n:
                    v = v * power(i, n)
            acc = acc + v
        return acc

    def substitute(self, i, image):
        """Substitute one variable by a polynomial of the same ring."""
        images = list(self.ring.gens())
        images[i] = image
        return self.evaluate_poly(images)

    def map_coefficients(self, func, new_ring):
        """Push the polynomial through a coefficient map (e.g. mod p)."""
        res = {}
        for e, c in self.terms.items():
            v = func(c)
            if not new_ring.field.is_zero(v):
                res[e] = v
        return Poly(new_ring, res)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def apply_linear(f, matrix):
    """f(M x): compose with a linear change of variables (rows of raws)."""
    ring = f.ring
    images = []
    for row in matrix:
        g = ring.zero()
        for i, c in enumerate(row):
            if not ring.field.is_zero(c):
                g = g + ring.var(i).scale(c)
        images.append(g)
    return f.evaluate_poly(images)


def jacobian(fs):
    """Jacobian matrix [d f_i / d x_j] of polynomials in one ring."""
    if not fs:
        return []
    ring = fs[0].ring
    for f in fs:
        if f.ring != ring:
            raise ValueError("polynomials from different rings")
    return [[f.deriv(j) for j in range(ring.nvars)] for f in fs]


def minors(matrix, k):
    """All k x k minors, rows then columns in lexicographic order."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    if k > nrows or k > ncols:
        raise ValueError(f"{k}x{k} minors of a {nrows}x{ncols} matrix")
    out = []
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            out.append(_det([[matrix[i][j] for j in cols] for i in rows]))
    return out


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    ring = m[0][0].ring
    acc = ring.zero()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = [[row[c] for c in range(n) if c != j] for row in m[1:]]
        term = m[0][j] * _det(sub)
        acc = acc - term if j % 2 else acc + term
    return acc


def homogeneous_degree(f):
    """Degree of a homogeneous polynomial, or None if inhomogeneous."""
    return f.homogeneous_degree()


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()/]))")


def _tokenize(text):
    pos, tokens = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r}")
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, ring, macros):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.macros = macros or {}
        gen_names = getattr(ring.field, "names", ())
        self.var_index = {n: i for i, n in enumerate(ring.names)}
        self.gen_index = {n: i for i, n in enumerate(gen_names)}

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        f = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.unary()
            elif kind == "op" and val == "/":
                raise ParseError("division is only allowed between integer literals")
            else:
                return f

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError("malformed exponent")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            nkind, nval = self.peek()
            if nkind == "op" and nval == "/":
                self.take()
                dkind, dval = self.take()
                if dkind != "int":
                    raise ParseError("division is only allowed between integer literals")
                if dval == 0:
                    raise ParseError("division by zero")
                return self.ring.const(mpq(val) / mpq(dval))
            return self.ring.const(val)
        if kind == "ident":
            if val in self.var_index:
                return self.ring.var(self.var_index[val])
            if val in self.gen_index:
                return self.ring.const(self.ring.field.gen_raw(self.gen_index[val]))
            if val in self.macros:
                return self.macros[val]
            raise ParseError(f"unknown identifier {val!r}")
        if kind == "op" and val == "(":
            f = self.expr()
            kind, val = self.take()
            if kind != "op" or val != ")":
                raise ParseError("missing closing parenthesis")
            return f
        raise ParseError(f"unexpected token {val!r}")


def parse(text, ring, macros=None):
    """Parse polynomial text over a ring; see the module docstring."""
    text = text.replace("−", "-")
    parser = _Parser(_tokenize(text), ring, macros)
    f = parser.expr()
    if parser.peek()[0] != "end":
        raise ParseError(f"trailing input at token {parser.peek()[1]!r}")
    return f


def format_poly(f):
    """Canonical text; ``parse(format_poly(f), f.ring) == f``."""
    if not f.terms:
        return "0"
    field = f.ring.field
    names = f.ring.names
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(n if p == 1 else f"{n}^{p}"
                        for n, p in zip(names, e) if p)
        cs = field.coeff_str(c)
        if not mono:
            piece = f"({cs})" if _needs_parens(cs) else cs
        elif cs == "1":
            piece = mono
        elif cs == "-1":
            piece = "-" + mono
        else:
            if _needs_parens(cs):
                cs = f"({cs})"
            piece = f"{cs}*{mono}"
        pieces.append(piece)
    text = pieces[0]
    for p in pieces[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


def _needs_parens(cs):
    return " + " in cs or " - " in cs
