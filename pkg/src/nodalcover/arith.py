"""Exact coefficient arithmetic.

Three coefficient domains, all sharing one duck-typed "field protocol":

* arbitrary-precision rationals (gmpy2 ``mpq`` when available, else
  :class:`fractions.Fraction`),
* towers of number fields built from successive monic minimal
  polynomials (:class:`FieldTower`, scalar wrapper :class:`TowerElement`),
* prime fields reached through a :class:`PrimeReduction` homomorphism
  (:class:`PrimeField`).

The field protocol consists of ``zero``, ``one``, ``add``, ``sub``,
``mul``, ``neg``, ``inv``, ``is_zero``, ``from_rational`` and
``coeff_str`` acting on *raw* values.  Raw tower values are nested
tuples: a level-k element is a tuple of ``degree(step k)`` level-(k-1)
elements, a level-0 element is a rational.  Every operation returns the
unique reduced normal form, so equality is plain ``==`` on raws.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    from fractions import Fraction as mpq


class TowerError(ValueError):
    """Invalid tower construction or mixed-tower arithmetic."""


class ReductionError(ValueError):
    """A prime reduction does not exist or cannot be applied."""


def rational(num, den=1):
    """Exact rational number; accepts ints, strings like '95/42', rationals."""
    if den != 1:
        return mpq(num) / mpq(den)
    return mpq(num)


_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every 64-bit integer."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldTower:
    """A tower Q(g_1, ..., g_s) defined by successive minimal polynomials.

    Immutable once built; construct through :func:`tower_construct` or by
    chaining :meth:`extended`.  The empty tower is the rationals.  Minimal
    polynomials are stored as coefficient tuples over the tower below
    their own step, constant term first, monic (leading 1 dropped).
    """

    def __init__(self, names=(), degrees=(), minpolys=()):
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.minpolys = tuple(minpolys)
        self._zeros = [_MPQ_ZERO]
        self._ones = [_MPQ_ONE]
        for d in self.degrees:
            z, o = self._zeros[-1], self._ones[-1]
            self._zeros.append(tuple([z] * d))
            self._ones.append(tuple([o] + [z] * (d - 1)))
        self.levels = len(self.names)
        self.zero = self._zeros[self.levels]
        self.one = self._ones[self.levels]

    @property
    def degree(self):
        total = 1
        for d in self.degrees:
            total *= d
        return total

    def extended(self, name, minpoly_coeffs):
        """New tower with one more step.

        ``minpoly_coeffs`` lists the coefficients of the monic minimal
        polynomial, constant term first and including the leading 1; they
        are raw values of *this* tower.
        """
        if name in self.names:
            raise TowerError(f"generator name {name!r} already used")
        coeffs = list(minpoly_coeffs)
        if len(coeffs) < 3:
            raise TowerError("minimal polynomial must have degree at least 2")
        if coeffs[-1] != self.one:
            raise TowerError("minimal polynomial must be monic")
        return FieldTower(self.names + (name,),
                          self.degrees + (len(coeffs) - 1,),
                          self.minpolys + (tuple(coeffs[:-1]),))

    # -- raw arithmetic ------------------------------------------------

    def _add(self, k, a, b):
        if k == 0:
            return a + b
        return tuple(self._add(k - 1, x, y) for x, y in zip(a, b))

    def _sub(self, k, a, b):
        if k == 0:
            return a - b
        return tuple(self._sub(k - 1, x, y) for x, y in zip(a, b))

    def _neg(self, k, a):
        if k == 0:
            return -a
        return tuple(self._neg(k - 1, x) for x in a)

    def _mul(self, k, a, b):
        if k == 0:
            return a * b
        low = k - 1
        d = self.degrees[k - 1]
        zero = self._zeros[low]
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y == zero:
                    continue
                prod[i + j] = self._add(low, prod[i + j], self._mul(low, x, y))
        mp = self.minpolys[k - 1]
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c == zero:
                continue
            prod[i] = zero
            for j in range(d):
                if mp[j] != zero:
                    prod[i - d + j] = self._sub(low, prod[i - d + j],
                                                self._mul(low, c, mp[j]))
        return tuple(prod[:d])

    def _inv(self, k, a):
        if k == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        low = k - 1
        zero = self._zeros[low]
        if all(x == zero for x in a):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid of a against the step's minimal polynomial,
        # with univariate arithmetic over the tower below
        mp = list(self.minpolys[k - 1]) + [self._ones[low]]
        r0, r1 = mp, [x for x in a]
        s0, s1 = [], [self._ones[low]]
        while True:
            r1 = self._poly_trim(low, r1)
            if not r1:
                raise ZeroDivisionError("inverse of zero")
            if len(r1) == 1:
                c = self._inv(low, r1[0])
                inv = [self._mul(low, c, x) for x in s1]
                break
            q, rem = self._poly_divmod(low, r0, r1)
            s0, s1 = s1, self._poly_sub(low, s0, self._poly_mul(low, q, s1))
            r0, r1 = r1, rem
        d = self.degrees[k - 1]
        inv = inv[:d] + [zero] * (d - len(inv))
        return tuple(inv[:d])

    # dense univariate helpers over level-k elements (lists, ascending)

    def _poly_trim(self, k, f):
        zero = self._zeros[k]
        while f and f[-1] == zero:
            f = f[:-1]
        return f

    def _poly_sub(self, k, f, g):
        n = max(len(f), len(g))
        zero = self._zeros[k]
        f = list(f) + [zero] * (n - len(f))
        g = list(g) + [zero] * (n - len(g))
        return [self._sub(k, x, y) for x, y in zip(f, g)]

    def _poly_mul(self, k, f, g):
        if not f or not g:
            return []
        zero = self._zeros[k]
        prod = [zero] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            if x == zero:
                continue
            for j, y in enumerate(g):
                prod[i + j] = self._add(k, prod[i + j], self._mul(k, x, y))
        return prod

    def _poly_divmod(self, k, f, g):
        f = list(f)
        g = self._poly_trim(k, list(g))
        zero = self._zeros[k]
        lead_inv = self._inv(k, g[-1])
        q = [zero] * max(0, len(f) - len(g) + 1)
        for i in range(len(f) - len(g), -1, -1):
            c = self._mul(k, f[i + len(g) - 1], lead_inv)
            if c == zero:
                continue
            q[i] = c
            for j, y in enumerate(g):
                f[i + j] = self._sub(k, f[i + j], self._mul(k, c, y))
        return q, self._poly_trim(k, f)

    # -- field protocol on raw top-level values -------------------------

    def add(self, a, b):
        return self._add(self.levels, a, b)

    def sub(self, a, b):
        return self._sub(self.levels, a, b)

    def mul(self, a, b):
        return self._mul(self.levels, a, b)

    def neg(self, a):
        return self._neg(self.levels, a)

    def inv(self, a):
        return self._inv(self.levels, a)

    def is_zero(self, a):
        return a == self.zero

    def from_rational(self, q):
        raw = mpq(q)
        for k in range(self.levels):
            raw = tuple([raw] + [self._zeros[k]] * (self.degrees[k] - 1))
        return raw

    def gen_raw(self, index):
        """The generator of step ``index`` as a raw top-level value."""
        k = index
        raw = tuple(self._ones[k] if i == 1 else self._zeros[k]
                    for i in range(self.degrees[k]))
        for j in range(k + 1, self.levels):
            raw = tuple([raw] + [self._zeros[j]] * (self.degrees[j] - 1))
        return raw

    def gen(self, name):
        return TowerElement(self, self.gen_raw(self.names.index(name)))

    def element(self, value):
        """Coerce an int, rational, string, raw or TowerElement."""
        if isinstance(value, TowerElement):
            if value.tower != self:
                raise TowerError("element of a different tower")
            return value
        if isinstance(value, str):
            from .poly import PolyRing, parse
            ring = PolyRing(self, ())
            f = parse(value, ring)
            return TowerElement(self, f.constant_value())
        return TowerElement(self, self.from_rational(value))

    def flat(self, raw):
        """Dense coefficient vector over the monomial basis of the tower."""
        if self.levels == 0:
            return [raw]
        out = []

        def rec(k, a):
            if k == 0:
                out.append(a)
                return
            for x in a:
                rec(k - 1, x)

        rec(self.levels, raw)
        return out

    def coeff_str(self, raw):
        """Canonical textual form, re-parseable by the expression grammar."""
        flat = self.flat(raw)
        exps = self._basis_exponents()
        pieces = []
        for q, e in zip(flat, exps):
            if q == 0:
                continue
            mono = "*".join(
                n if p == 1 else f"{n}^{p}"
                for n, p in zip(self.names, e) if p)
            if not mono:
                pieces.append(str(q))
            elif q == 1:
                pieces.append(mono)
            elif q == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{q}*{mono}")
        if not pieces:
            return "0"
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def _basis_exponents(self):
        # order matches flat(): the top generator's exponent varies slowest
        def build(k):
            if k == 0:
                return [()]
            inner = build(k - 1)
            return [e + (i,) for i in range(self.degrees[k - 1]) for e in inner]

        return build(self.levels)

    def __eq__(self, other):
        return (isinstance(other, FieldTower)
                and self.names == other.names
                and self.degrees == other.degrees
                and self.minpolys == other.minpolys)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        if not self.names:
            return "FieldTower(QQ)"
        return f"FieldTower(QQ({', '.join(self.names)}), degree {self.degree})"


class TowerElement:
    """A scalar in a :class:`FieldTower`, always in reduced normal form."""

    __slots__ = ("tower", "raw")

    def __init__(self, tower, raw):
        self.tower = tower
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.tower != self.tower:
                raise TowerError("mixed towers")
            return other.raw
        return self.tower.from_rational(other)

    def __add__(self, other):
        return TowerElement(self.tower, self.tower.add(self.raw, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return TowerElement(self.tower, self.tower.sub(self.raw, self._coerce(other)))

    def __rsub__(self, other):
        return TowerElement(self.tower, self.tower.sub(self._coerce(other), self.raw))

    def __mul__(self, other):
        return TowerElement(self.tower, self.tower.mul(self.raw, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return TowerElement(self.tower,
                            self.tower.mul(self.raw, self.tower.inv(self._coerce(other))))

    def __rtruediv__(self, other):
        return TowerElement(self.tower,
                            self.tower.mul(self._coerce(other), self.tower.inv(self.raw)))

    def __neg__(self):
        return TowerElement(self.tower, self.tower.neg(self.raw))

    def __pow__(self, n):
        if n < 0:
            return (self ** (-n)).inverse()
        result = TowerElement(self.tower, self.tower.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return TowerElement(self.tower, self.tower.inv(self.raw))

    def is_zero(self):
        return self.tower.is_zero(self.raw)

    @property
    def coeffs(self):
        return self.tower.flat(self.raw)

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            return self.tower == other.tower and self.raw == other.raw
        try:
            return self.raw == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __str__(self):
        return self.tower.coeff_str(self.raw)

    def __repr__(self):
        return f"TowerElement({self})"


def tower_construct(steps):
    """Build a :class:`FieldTower` from (name, minimal-polynomial) pairs.

    Each minimal polynomial is given in the expression grammar, written
    in its own generator name, with coefficients from the tower built so
    far, e.g. ``[("r", "r^2 + 15"), ("m", "m^2 - 95/42*m + 2855/2646")]``.
    """
    from .poly import ParseError, PolyRing, parse

    tower = FieldTower()
    for name, text in steps:
        ring = PolyRing(tower, (name,))
        try:
            f = parse(text, ring) if isinstance(text, str) else text
        except ParseError as exc:
            raise TowerError(f"minimal polynomial for {name!r}: {exc}") from exc
        deg = max((e[0] for e in f.terms), default=0)
        coeffs = [tower.zero] * (deg + 1)
        for e, c in f.terms.items():
            coeffs[e[0]] = c
        tower = tower.extended(name, coeffs)
    return tower


def invert(a):
    """Field inverse of a nonzero TowerElement."""
    return a.inverse()


class PrimeField:
    """GF(p) with raw values the least nonnegative residues."""

    def __init__(self, p):
        if p == 2 or not is_prime(p):
            raise ReductionError(f"{p} is not an odd prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero mod p")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def from_rational(self, q):
        q = mpq(q)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise ReductionError(f"denominator {den} vanishes mod {self.p}")
        return num * pow(den, self.p - 2, self.p) % self.p

    def coeff_str(self, raw):
        return str(raw)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class PrimeReduction:
    """A ring homomorphism from a tower to GF(p).

    Stores one root per tower generator; validated so that every minimal
    polynomial, with its coefficients reduced, vanishes at the stored
    image and is squarefree mod p.
    """

    def __init__(self, tower, p, images):
        self.tower = tower
        self.field = PrimeField(p)
        self.p = p
        self.images = tuple(images)
        if len(self.images) != tower.levels:
            raise ReductionError("one image per tower generator required")
        for k in range(tower.levels):
            coeffs = [self._apply(k, c) for c in tower.minpolys[k]] + [1]
            if not _is_squarefree_mod_p(coeffs, p):
                raise ReductionError(
                    f"minimal polynomial of {tower.names[k]!r} is not "
                    f"squarefree mod {p}")
            if _eval_mod_p(coeffs, self.images[k], p) != 0:
                raise ReductionError(
                    f"{self.images[k]} is not a root of the minimal "
                    f"polynomial of {tower.names[k]!r} mod {p}")

    def _apply(self, level, raw):
        if level == 0:
            return self.field.from_rational(raw)
        img = self.images[level - 1]
        acc = 0
        for c in reversed(raw):
            acc = (acc * img + self._apply(level - 1, c)) % self.p
        return acc

    def apply(self, value):
        """Image of a TowerElement (or raw value) in GF(p)."""
        if isinstance(value, TowerElement):
            if value.tower != self.tower:
                raise ReductionError("element of a different tower")
            value = value.raw
        return self._apply(self.tower.levels, value)

    def __repr__(self):
        return f"PrimeReduction(p={self.p}, images={self.images})"


def reduce_mod_p(a, red):
    """Apply a PrimeReduction to a TowerElement; a ring homomorphism."""
    return red.apply(a)


def _eval_mod_p(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _is_squarefree_mod_p(coeffs, p):
    deriv = [c * i % p for i, c in enumerate(coeffs)][1:]
    return _poly_gcd_degree_mod_p(coeffs, deriv, p) == 0


def _poly_gcd_degree_mod_p(f, g, p):
    def trim(h):
        while h and h[-1] % p == 0:
            h.pop()
        return h

    f, g = trim(list(f)), trim(list(g))
    while g:
        inv = pow(g[-1], p - 2, p)
        while len(f) >= len(g):
            c = f[-1] * inv % p
            off = len(f) - len(g)
            for i, a in enumerate(g):
                f[off + i] = (f[off + i] - c * a) % p
            f = trim(f)
            if not f:
                break
        f, g = g, f
    return len(f) - 1 if f else -1


def _roots_mod_p(coeffs, p):
    """All roots in GF(p), ascending; brute scan (p is desk-scale)."""
    return [x for x in range(p) if _eval_mod_p(coeffs, x, p) == 0]


def find_prime_reduction(tower, floor=1000, avoid=()):
    """Smallest valid reduction with p >= floor, skipping primes in avoid.

    Scans primes upward; for each, walks the tower steps choosing the
    smallest nonnegative root, backtracking over root choices when a
    later step has no root for the earlier choice.
    """
    p = max(3, floor)
    if p % 2 == 0:
        p += 1
    attempts = 0
    while attempts < 100000:
        if is_prime(p) and p not in avoid:
            images = _search_images(tower, p)
            if images is not None:
                return PrimeReduction(tower, p, images)
        p += 2
        attempts += 1
    raise ReductionError(f"no valid prime found above {floor}")


def _search_images(tower, p):
    def rec(k, chosen):
        if k == tower.levels:
            return chosen
        try:
            red = _PartialReduction(tower, p, chosen)
            coeffs = [red.apply_level(k, c) for c in tower.minpolys[k]] + [1]
        except ReductionError:
            return None
        if not _is_squarefree_mod_p(coeffs, p):
            return None
        for root in _roots_mod_p(coeffs, p):
            result = rec(k + 1, chosen + [root])
            if result is not None:
                return result
        return None

    return rec(0, [])


class _PartialReduction:
    """Reduction of the first k tower steps, used during prime search."""

    def __init__(self, tower, p, images):
        self.tower = tower
        self.p = p
        self.images = images

    def apply_level(self, level, raw):
        if level == 0:
            q = mpq(raw)
            num, den = int(q.numerator), int(q.denominator)
            if den % self.p == 0:
                raise ReductionError("denominator vanishes")
            return num * pow(den, self.p - 2, self.p) % self.p
        img = self.images[level - 1]
        acc = 0
        for c in reversed(raw):
            acc = (acc * img + self.apply_level(level - 1, c)) % self.p
        return acc
