"""Scenario runner: bundled data, named checks, machine-readable reports.

Two scenarios are built in.  ``x40`` verifies the 40-nodal complete
intersection surface of type (2,4) in P^4: its singular locus, the nine
tropes, the 2-divisible node sets, the branch assignment for a (Z/2)^3
covering, the quadric linear-system dimensions, and the numerical
invariants of the covering and its quotients.  ``y48`` verifies the
48-nodal complete intersection of four quadrics in P^6: the alternative
presentation of the base surface and the singular-locus degree counts.

Checks run either exactly over the bundled number-field towers or
through reductions to prime fields; mod-p results are probabilistic and
reported as such.  Bundled data is guarded by SHA-256 checksums.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from . import cover, linsys, scheme
from .arith import (
    PrimeReduction,
    ReductionError,
    find_prime_reduction,
    mpq,
    tower_construct,
)
from .cover import BranchAssignment, CharClassData, TropeTable
from .groebner import Ideal, hilbert_dim_degree
from .poly import PolyRing, parse
from .scheme import ProjScheme, RationalPoint


class ConfigError(Exception):
    """Bad scenario name, invalid primes, or corrupted data files."""


SIGMA_BITS = {"a": 1, "b": 2, "c": 4, "ab": 3, "ac": 5, "bc": 6, "abc": 7}
ENV_DATA_DIR = "NODALCOVER_DATA"


# -- bundled data ------------------------------------------------------------


def _data_root():
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return override
    return resources.files("nodalcover") / "data"


_manifest_cache = {}


def _load_bytes(name):
    root = _data_root()
    if isinstance(root, str):
        with open(os.path.join(root, name), "rb") as fh:
            blob = fh.read()
        manifest_path = os.path.join(root, "data_manifest.json")
        with open(manifest_path, "rb") as fh:
            manifest = json.loads(fh.read())
    else:
        blob = (root / name).read_bytes()
        manifest = json.loads((root / "data_manifest.json").read_bytes())
    expected = manifest.get(name)
    if expected is None:
        raise ConfigError(f"data file {name!r} missing from the checksum manifest")
    digest = hashlib.sha256(blob).hexdigest()
    if digest != expected:
        raise ConfigError(
            f"data file {name!r} fails its checksum; refusing to run on "
            f"modified data (got {digest[:12]}..., manifest {expected[:12]}...)")
    return blob


def _load_json(name):
    return json.loads(_load_bytes(name).decode())


def _data_lines(name):
    for line in _load_bytes(name).decode().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


class ScenarioData:
    """A scenario's bundled data, parsed exactly over its field tower."""

    def __init__(self, name, cfg, tower, ring, polys, points, tropes, assignment):
        self.name = name
        self.cfg = cfg
        self.tower = tower
        self.ring = ring
        self.polys = polys
        self.points = points
        self.tropes = tropes
        self.assignment = assignment

    def with_points(self, points):
        return ScenarioData(self.name, self.cfg, self.tower, self.ring,
                            self.polys, list(points), self.tropes, self.assignment)

    def with_tropes(self, tropes):
        return ScenarioData(self.name, self.cfg, self.tower, self.ring,
                            self.polys, self.points, list(tropes), self.assignment)


def load_scenario(name):
    if name not in ("x40", "y48"):
        raise ConfigError(f"unknown scenario {name!r} (available: x40, y48, all)")
    cfg = _load_json(f"{name}.json")
    tower = tower_construct([tuple(step) for step in cfg["tower"]])
    ring = PolyRing(tower, tuple(cfg["variables"]))
    macros = {k: parse(v, ring) for k, v in cfg.get("macros", {}).items()}
    polys = {k: parse(v, ring, macros) for k, v in cfg["polynomials"].items()}
    points = []
    if "points_file" in cfg:
        points = [RationalPoint.parse(tower, line)
                  for line in _data_lines(cfg["points_file"])]
    tropes = []
    if "tropes_file" in cfg:
        tropes = [parse(line, ring) for line in _data_lines(cfg["tropes_file"])]
    assignment = None
    if "assignment" in cfg:
        assignment = BranchAssignment(
            3, {SIGMA_BITS[k]: frozenset(v) for k, v in cfg["assignment"].items()})
    return ScenarioData(name, cfg, tower, ring, polys, points, tropes, assignment)


class Realization:
    """Scenario data pushed into one concrete coefficient field."""

    def __init__(self, data, mode, field, ring, polys, points, tropes, prime=None):
        self.data = data
        self.mode = mode
        self.field = field
        self.ring = ring
        self.polys = polys
        self.points = points
        self.tropes = tropes
        self.prime = prime
        self.assignment = data.assignment
        self.cfg = data.cfg

    @classmethod
    def exact(cls, data):
        return cls(data, "exact", data.tower, data.ring, dict(data.polys),
                   list(data.points), list(data.tropes))

    @classmethod
    def mod_p(cls, data, reduction):
        gf = reduction.field
        ring = PolyRing(gf, data.ring.names)
        polys = {k: f.map_coefficients(reduction.apply, ring)
                 for k, f in data.polys.items()}
        points = [P.map(reduction.apply, gf) for P in data.points]
        tropes = [f.map_coefficients(reduction.apply, ring) for f in data.tropes]
        return cls(data, "mod-p", gf, ring, polys, points, tropes,
                   prime=reduction.p)


# -- reports -----------------------------------------------------------------


@dataclass
class CheckResult:
    check_id: str
    description: str
    expected: object
    observed: object
    passed: bool
    mode: str
    primes: list
    seconds: float

    def to_dict(self):
        return {
            "id": self.check_id,
            "description": self.description,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "mode": self.mode,
            "primes": self.primes,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class Report:
    scenario: str
    mode: str
    primes: list
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "scenario": self.scenario,
            "mode": self.mode,
            "primes": self.primes,
            "pass": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


# -- x40 context and checks --------------------------------------------------


class _cached:
    def __init__(self, func):
        self.func = func
        self.name = func.__name__

    def __get__(self, obj, objtype=None):
        if obj is None:
            return self
        value = self.func(obj)
        obj.__dict__[self.name] = value
        return value


class X40Context:
    """Lazily computed objects shared by the x40 checks."""

    def __init__(self, realization, all_partitions=False):
        self.re = realization
        self.all_partitions = all_partitions
        self.node_ids = list(range(1, len(realization.points) + 1))

    @_cached
    def surface(self):
        p = self.re.polys
        return ProjScheme.of(self.re.ring, [p["Q"], p["I"]])

    @_cached
    def singular_locus(self):
        return scheme.singular_subscheme(self.surface, 2)

    @_cached
    def trope_sets(self):
        field = self.re.field
        out = {}
        for tid, L in enumerate(self.re.tropes, start=1):
            out[tid] = frozenset(
                i for i, P in zip(self.node_ids, self.re.points)
                if field.is_zero(L.evaluate(P.coords)))
        return out

    @_cached
    def trope_table(self):
        return TropeTable(self.trope_sets)

    @_cached
    def reduced_tropes(self):
        p = self.re.polys
        out = []
        for L in self.re.tropes:
            Z = ProjScheme.of(self.re.ring, [p["Q"], p["I"], L])
            out.append(scheme.reduced_subscheme(Z))
        return out

    @_cached
    def all_nodes(self):
        return frozenset(self.node_ids)

    @_cached
    def quadrics(self):
        return linsys.complete_system(self.re.ring, 2)

    @_cached
    def union_t1_t2(self):
        i1, i2 = self.re.cfg["h0_tropes"]
        return scheme.union(self.reduced_tropes[i1 - 1], self.reduced_tropes[i2 - 1])

    @_cached
    def h0_values(self):
        """Section counts h0(K + L_chi) per nonzero character, from quadrics."""
        out = {}
        L = linsys.through_scheme(self.quadrics, self.union_t1_t2)
        out[7], _ = linsys.trace_dimension(L, self.surface)
        for chi in (1, 2, 4, 3, 5, 6):
            S = cover.branch_char_set(self.re.assignment, chi)
            pts = [P for i, P in zip(self.node_ids, self.re.points) if i in S]
            Lp = linsys.through_points(self.quadrics, pts)
            out[chi], _ = linsys.trace_dimension(Lp, self.surface)
        return out

    def points_in(self, X):
        return frozenset(i for i, P in zip(self.node_ids, self.re.points)
                         if scheme.contains_point(X, P))


def _x1(ctx):
    sizes = [len(ctx.re.assignment.parts[SIGMA_BITS[k]])
             for k in ("a", "b", "c", "abc", "bc", "ac", "ab")]
    on = scheme.points_on(ctx.singular_locus, ctx.re.points)
    observed = {
        "points": len(ctx.re.points),
        "distinct": len(set(ctx.re.points)),
        "on_singular_locus": len(on),
        "class_sizes": sizes,
        "partition_covers_all": ctx.re.assignment.nodes() == ctx.all_nodes,
    }
    expected = {"points": 40, "distinct": 40, "on_singular_locus": 40,
                "class_sizes": [4, 4, 4, 4, 8, 8, 8], "partition_covers_all": True}
    return expected, observed


def _x2(ctx):
    cert = scheme.certify_zero_dim_points(ctx.singular_locus, ctx.re.points)
    observed = {"reduced_degree": cert.reduced_degree, "complete": cert.complete}
    return {"reduced_degree": 40, "complete": True}, observed


def _x3(ctx):
    observed = [hilbert_dim_degree(T.ideal) for T in ctx.reduced_tropes]
    return [(1, 4)] * len(ctx.re.tropes), observed


def _x4(ctx):
    observed = []
    for tid, T in enumerate(ctx.reduced_tropes, start=1):
        pts = [P for i, P in zip(ctx.node_ids, ctx.re.points)
               if i in ctx.trope_sets[tid]]
        observed.append(scheme.smooth_at_points(T, pts))
    return [True] * len(ctx.re.tropes), observed


def _x5(ctx):
    observed = [len(ctx.trope_sets[t]) for t in sorted(ctx.trope_sets)]
    return [12] * len(ctx.re.tropes), observed


def _x6(ctx):
    p1, p2 = ctx.re.cfg["twenty_node_pairs"]
    s1 = cover.trope_pair_set(ctx.trope_table, *p1)
    s2 = cover.trope_pair_set(ctx.trope_table, *p2)
    observed = {"s1": len(s1), "s2": len(s2), "overlap": len(s1 & s2),
                "union": len(s1 | s2)}
    return {"s1": 20, "s2": 20, "overlap": 0, "union": 40}, observed


def _x7(ctx):
    observed = []
    for pair, chi in zip(ctx.re.cfg["char_sum_pairs"], (1, 2, 4)):
        S = ctx.all_nodes - cover.trope_pair_set(ctx.trope_table, *pair)
        observed.append(S == cover.branch_char_set(ctx.re.assignment, chi))
    return [True, True, True], observed


def _x8(ctx):
    sizes = {SIGMA_BITS[k]: v for k, v in ctx.re.cfg["sizes"].items()}
    try:
        if ctx.all_partitions:
            found = cover.partition_search(ctx.trope_table, ctx.all_nodes, sizes,
                                           all_solutions=True)
            ok = bool(found) and all(_assignment_certified(ctx, a) for a in found)
            observed = {"found": ok, "solutions": len(found)}
            return {"found": True, "solutions": len(found)}, observed
        found = cover.partition_search(ctx.trope_table, ctx.all_nodes, sizes)
        observed = {"found": _assignment_certified(ctx, found)}
    except cover.PartitionSearchError:
        observed = {"found": False}
    return {"found": True}, observed


def _assignment_certified(ctx, assignment):
    if sorted(map(len, assignment.parts.values())) != [4, 4, 4, 4, 8, 8, 8]:
        return False
    for chi in (1, 2, 4):
        cert = cover.gf2_certify(cover.branch_char_set(assignment, chi),
                                 ctx.trope_table)
        if not cert.verify(ctx.trope_table):
            return False
    return True


def _x9(ctx):
    i1, i2 = ctx.re.cfg["h0_tropes"]
    T1, T2 = ctx.reduced_tropes[i1 - 1], ctx.reduced_tropes[i2 - 1]
    in_union = ctx.points_in(scheme.intersect(ctx.singular_locus, ctx.union_t1_t2))
    in_both = ctx.points_in(scheme.intersect(scheme.intersect(ctx.singular_locus, T1), T2))
    pts = in_union - in_both
    sixteen = frozenset().union(*(ctx.re.assignment.parts[SIGMA_BITS[k]]
                                  for k in ("a", "b", "c", "abc")))
    return True, pts == sixteen


def _x10(ctx):
    return 2, ctx.h0_values[7]


def _x11(ctx):
    return [0] * 6, [ctx.h0_values[chi] for chi in (1, 2, 4, 3, 5, 6)]


def _x12(ctx):
    base = ctx.re.cfg["base_invariants"]
    chi_x, pg_x, ksq_x = base["chi"], base["pg"], base["ksq"]
    assignment = ctx.re.assignment
    h0s = ctx.h0_values
    char_data = [CharClassData.nodal(chi, len(cover.branch_char_set(assignment, chi)),
                                     h0=h0s[chi])
                 for chi in range(1, 8)]
    chi_y_nodal = cover.chi_nodal(3, chi_x, 40)
    chi_y_cover = cover.chi_cover(3, chi_x, char_data)
    pg_y = cover.pg_cover(pg_x, [d.h0 for d in char_data])
    q_y = pg_y - chi_y_nodal + 1
    x16 = cover.quotient_data(assignment, (0, 4), chi_x)
    y48 = cover.quotient_data(assignment, (0, 3, 5, 6), chi_x)
    x32 = cover.quotient_data(assignment, (0, 3, 4, 7), chi_x)
    y32 = cover.quotient_data(assignment, (0, 3), chi_x)
    y_full = cover.quotient_data(assignment, (0,), chi_x)
    x40_q = cover.quotient_data(assignment, tuple(range(8)), chi_x)
    pg_x16 = int(x16.chi) - 1
    pg_y48 = int(y48.chi) - 1
    observed = {
        "chi_Y_nodal": _num(chi_y_nodal),
        "chi_Y_cover_formula": _num(chi_y_cover),
        "pg_Y": pg_y,
        "q_Y": _num(q_y),
        "ksq_Y": cover.ksq_cover(3, ksq_x),
        "chi_X16": _num(x16.chi),
        "m_X16": x16.m,
        "node_counts": {
            "Y": y_full.node_count,
            "Y32": y32.node_count,
            "Y48": y48.node_count,
            "X16": x16.node_count,
            "X32": x32.node_count,
            "X40": x40_q.node_count,
        },
        "canonical_factors_X16_over_X40": cover.canonical_factors(pg_x16, pg_x),
        "canonical_factors_Y_over_Y48": cover.canonical_factors(pg_y, pg_y48),
    }
    expected = {
        "chi_Y_nodal": 8,
        "chi_Y_cover_formula": 8,
        "pg_Y": 7,
        "q_Y": 0,
        "ksq_Y": 64,
        "chi_X16": 6,
        "m_X16": 36,
        "node_counts": {"Y": 0, "Y32": 32, "Y48": 48,
                        "X16": 16, "X32": 32, "X40": 40},
        "canonical_factors_X16_over_X40": True,
        "canonical_factors_Y_over_Y48": True,
    }
    return expected, observed


def _num(value):
    """JSON-friendly exact number: int when integral, else 'a/b'."""
    q = mpq(value)
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


X40_CHECKS = [
    ("X1", "the 40 bundled points are distinct singular points and the "
           "branch classes partition them with sizes (4,4,4,4,8,8,8)", _x1),
    ("X2", "point certificate is complete: reduced singular locus has "
           "degree 40, so no singular points exist over any extension", _x2),
    ("X3", "each of the 9 tropes cuts the surface in a doubled curve whose "
           "reduction is a degree-4 curve", _x3),
    ("X4", "each reduced trope curve is smooth at the 12 nodes it contains", _x4),
    ("X5", "each trope passes through exactly 12 of the 40 nodes", _x5),
    ("X6", "the two trope-pair symmetric differences have 20 nodes each, "
           "are disjoint, and cover all 40 nodes", _x6),
    ("X7", "the three 24-node trope-pair complements equal the three "
           "basis-character branch sums of the bundled assignment", _x7),
    ("X8", "the partition search rediscovers a valid branch assignment with "
           "GF(2) divisibility certificates from the tropes alone", _x8),
    ("X9", "the nodes on the union of the two chosen reduced tropes, minus "
           "those on both, are exactly the 16 nodes of the 111-character sum", _x9),
    ("X10", "the quadrics through the union of the two reduced tropes trace "
            "a 2-dimensional system on the surface", _x10),
    ("X11", "the quadrics through each of the six 24-node sets trace a "
            "0-dimensional system on the surface", _x11),
    ("X12", "invariant ledger of the covering and its quotients: chi, p_g, "
            "q, K^2, branch counts and node counts", _x12),
]


# -- y48 context and checks --------------------------------------------------


class Y48Context:
    def __init__(self, realization):
        self.re = realization

    @_cached
    def alt_presentation(self):
        p = self.re.polys
        F = p["B"] * p["B"] - p["C"] * p["D"]
        u, v = self.re.ring.var(5), self.re.ring.var(6)
        return ProjScheme.of(self.re.ring, [F, p["Q"], u, v])

    @_cached
    def base_presentation(self):
        p = self.re.polys
        u, v = self.re.ring.var(5), self.re.ring.var(6)
        return ProjScheme.of(self.re.ring, [p["Q"], p["I"], u, v])

    @_cached
    def surface(self):
        p = self.re.polys
        u, v = self.re.ring.var(5), self.re.ring.var(6)
        return ProjScheme.of(self.re.ring,
                             [u * u - p["C"], v * v - p["D"], u * v - p["B"], p["Q"]])

    @_cached
    def singular_locus(self):
        return scheme.singular_subscheme(self.surface, 4)

    @_cached
    def singular_dim_degree(self):
        return hilbert_dim_degree(self.singular_locus.ideal)


def _y1(ctx):
    return True, scheme.scheme_equal(ctx.alt_presentation, ctx.base_presentation)


def _y2(ctx):
    return 0, ctx.singular_dim_degree[0]


def _y3(ctx):
    return 48, ctx.singular_dim_degree[1]


def _y4(ctx):
    reduced = scheme.reduced_subscheme(ctx.singular_locus)
    return 48, hilbert_dim_degree(reduced.ideal)[1]


Y48_CHECKS = [
    ("Y1", "the quartic-quadric presentation B^2-CD=Q=0 cuts the same "
           "subscheme of P^6 as the original surface equations", _y1),
    ("Y2", "the singular locus of the four-quadric surface has dimension 0", _y2),
    ("Y3", "the singular locus has degree 48", _y3),
    ("Y4", "the reduced singular locus still has degree 48: the 48 "
           "singular points are distinct", _y4),
]

CHECK_INDEX = {cid: (desc, fn, "x40") for cid, desc, fn in X40_CHECKS}
CHECK_INDEX.update({cid: (desc, fn, "y48") for cid, desc, fn in Y48_CHECKS})


# -- runner ------------------------------------------------------------------


def _select_checks(scenario, check_ids):
    catalog = X40_CHECKS if scenario == "x40" else Y48_CHECKS
    if not check_ids:
        return catalog
    selected = []
    for cid, desc, fn in catalog:
        if cid in check_ids:
            selected.append((cid, desc, fn))
    missing = set(check_ids) - {c[0] for c in selected}
    if missing:
        raise ConfigError(f"unknown checks for scenario {scenario}: {sorted(missing)}")
    return selected


def select_primes(data, primes=None, count=3, floor=1000):
    """Validate explicit primes or scan for ``count`` valid ones."""
    reductions = []
    if primes:
        for p in primes:
            try:
                red = find_prime_reduction(data.tower, floor=p, avoid=())
            except ReductionError as exc:
                raise ConfigError(str(exc)) from exc
            if red.p != p:
                raise ConfigError(
                    f"prime {p} is not valid for the scenario tower "
                    f"(roots or squarefreeness fail)")
            reductions.append(red)
        return reductions
    avoid = set()
    while len(reductions) < count:
        try:
            red = find_prime_reduction(data.tower, floor=floor, avoid=tuple(avoid))
        except ReductionError as exc:
            raise ConfigError(str(exc)) from exc
        try:
            Realization.mod_p(data, red)
        except ReductionError:
            avoid.add(red.p)
            continue
        reductions.append(red)
        avoid.add(red.p)
    return reductions


def _make_context(scenario, realization, all_partitions):
    if scenario == "x40":
        return X40Context(realization, all_partitions=all_partitions)
    return Y48Context(realization)


def run_checks(scenario, realizations, check_ids=None, all_partitions=False):
    """Run the catalog over one or more realizations; no short-circuit."""
    checks = _select_checks(scenario, check_ids)
    contexts = [_make_context(scenario, r, all_partitions) for r in realizations]
    mode = contexts and realizations[0].mode or "exact"
    primes = [r.prime for r in realizations if r.prime is not None]
    report = Report(scenario=scenario,
                    mode=mode if mode == "exact" else "mod-p (probabilistic)",
                    primes=primes)
    t_scenario = time.perf_counter()
    for cid, desc, fn in checks:
        t0 = time.perf_counter()
        expected = None
        observeds = []
        failed_exc = None
        for ctx in contexts:
            try:
                expected, observed = fn(ctx)
            except Exception as exc:  # a failing computation is a failing check
                failed_exc = f"{type(exc).__name__}: {exc}"
                observed = failed_exc
            observeds.append(observed)
        agree = all(o == observeds[0] for o in observeds)
        observed = observeds[0] if agree else observeds
        passed = failed_exc is None and agree and all(o == expected for o in observeds)
        report.checks.append(CheckResult(
            check_id=cid, description=desc,
            expected=_jsonable(expected), observed=_jsonable(observed),
            passed=bool(passed),
            mode=report.mode, primes=primes,
            seconds=time.perf_counter() - t0))
    report.seconds = time.perf_counter() - t_scenario
    return report


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str, float)):
        return value
    return str(value)


def run_scenario(name, mode=None, primes=None, prime_count=3, prime_floor=1000,
                 check_ids=None, all_partitions=False, warn_stream=None):
    """Run a scenario and return its Report.

    ``mode`` is "exact" or "modp"; the default is exact for x40 and mod-p
    over three auto-selected primes for y48.
    """
    data = load_scenario(name)
    if mode is None:
        mode = "exact" if name == "x40" else "modp"
    if mode == "exact":
        if name == "y48" and (not check_ids or set(check_ids) - {"Y1"}):
            stream = warn_stream if warn_stream is not None else sys.stderr
            print("warning: exact verification of the P^6 singular-locus "
                  "checks (Y2-Y4) over the degree-8 tower may take a very "
                  "long time; the default mod-p mode covers them at three "
                  "primes", file=stream)
        realizations = [Realization.exact(data)]
    elif mode == "modp":
        reductions = select_primes(data, primes=primes, count=prime_count,
                                   floor=prime_floor)
        try:
            realizations = [Realization.mod_p(data, red) for red in reductions]
        except ReductionError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        raise ConfigError(f"unknown mode {mode!r}")
    return run_checks(name, realizations, check_ids=check_ids,
                      all_partitions=all_partitions)
