"""Corpus sweeps: run the property suite over every datum within bounds.

Each property states expected/got as strings; a datum passes silently.
Sweeps are deterministic: datums are checked in canonical enumeration
order and violations are reported in that order regardless of the number
of worker processes.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from math import gcd
from time import perf_counter

from .datum import CorpusBounds, EquisingularDatum, enumerate_corpus
from .errors import CurveSpecError
from .fibre import (
    build_fibre_graph,
    component_monodromy,
    divide_by_gcd,
    euler_characteristic_closed,
)
from .invariants import beta, boundary2_components, check_upper_bound


@dataclass(frozen=True)
class Violation:
    index: int
    datum: EquisingularDatum
    prop: str
    expected: str
    got: str
    documented: bool = False


@dataclass
class SweepResult:
    bounds: CorpusBounds
    properties: tuple[str, ...]
    checked: int
    violations: list[Violation]
    elapsed: float


class _DatumContext:
    """Shared per-datum computations, evaluated lazily."""

    def __init__(self, datum: EquisingularDatum):
        self.datum = datum
        self._graph = None
        self._labels = None
        self._beta = None

    @property
    def graph(self):
        if self._graph is None:
            self._graph = build_fibre_graph(self.datum)
        return self._graph

    @property
    def labels(self):
        if self._labels is None:
            self._labels = self.graph.component_labels()
        return self._labels

    @property
    def d_graph(self):
        return max(self.labels) + 1

    @property
    def chi_graph(self):
        return self.graph.vertex_count - self.graph.edge_count

    @property
    def b1_graph(self):
        return self.d_graph - self.chi_graph

    @property
    def is_singular(self):
        return any(b.multiplicity >= 2 for b in self.datum.branches)

    @property
    def beta_report(self):
        if self._beta is None:
            self._beta = beta(self.datum)
        return self._beta


def _gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


# --- property checks -------------------------------------------------------
# each returns a list of (expected, got, documented) triples

def _prop_lemma_d_gcd(ctx):
    expected = _gcd_all(ctx.datum.multiplicities)
    if ctx.d_graph != expected:
        return [(f"b0 = gcd(m_i) = {expected}", f"b0 = {ctx.d_graph}", False)]
    return []


def _prop_two_route_chi(ctx):
    closed = euler_characteristic_closed(ctx.datum)
    if ctx.chi_graph != closed:
        return [(f"V - E = closed form = {closed}", f"V - E = {ctx.chi_graph}", False)]
    return []


def _prop_mu_reduced(ctx):
    if any(b.multiplicity != 1 for b in ctx.datum.branches):
        return []
    datum = ctx.datum
    delta_total = sum(b.delta for b in datum.branches) + sum(
        datum.intersections[i][j]
        for i in range(datum.r) for j in range(i + 1, datum.r)
    )
    expected = 2 * delta_total - datum.r + 1
    if ctx.b1_graph != expected:
        return [(f"b1 = 2*delta_total - r + 1 = {expected}", f"b1 = {ctx.b1_graph}", False)]
    return []


def _prop_divide_by_gcd(ctx):
    d, reduced = divide_by_gcd(ctx.datum)
    rctx = _DatumContext(reduced)
    out = []
    triple = (ctx.d_graph, ctx.b1_graph, ctx.chi_graph)
    rtriple = (rctx.d_graph, rctx.b1_graph, rctx.chi_graph)
    scaled = tuple(d * x for x in rtriple)
    if triple != scaled:
        out.append((f"(b0, b1, chi) = d * reduced = {scaled}", f"{triple}", False))
    if rctx.d_graph != 1:
        out.append(("reduced fibre connected (b0 = 1)", f"b0 = {rctx.d_graph}", False))
    return out


def _prop_monodromy_cycle(ctx):
    mono = component_monodromy(ctx.datum)
    if mono.cycle_type != (ctx.d_graph,):
        return [(f"cycle type [{ctx.d_graph}]", f"{list(mono.cycle_type)}", False)]
    return []


def _prop_b1_zero_iff_xr(ctx):
    datum = ctx.datum
    structural = datum.r == 1 and datum.branches[0].delta == 0
    homological = ctx.b1_graph == 0
    if structural != homological:
        return [(
            "b1 = 0 exactly for a power of a smooth branch",
            f"r = {datum.r}, delta = {list(datum.deltas)}, b1 = {ctx.b1_graph}",
            False,
        )]
    return []


def _prop_beta_nonneg(ctx):
    if not ctx.is_singular:
        return []
    value = ctx.beta_report.beta
    if value < 0:
        return [("beta >= 0", f"beta = {value}", False)]
    return []


def _prop_corollary_beta0(ctx):
    if not ctx.is_singular:
        return []
    rep = ctx.beta_report
    if rep.c1_beta_zero != rep.verdict_bobadilla:
        return [(
            "beta = 0 exactly for a power of a smooth branch",
            f"beta = {rep.beta}, structural verdict = {rep.verdict_bobadilla}",
            False,
        )]
    return []


def _prop_c1_iff_c3(ctx):
    if not ctx.is_singular:
        return []
    rep = ctx.beta_report
    if rep.c1_beta_zero != rep.c3_homology_form:
        return [(
            "C1 (beta = 0) equivalent to C3 (b1 = 0 and b0 - 1 = sum mu_perp)",
            f"C1 = {rep.c1_beta_zero}, C3 = {rep.c3_homology_form}",
            False,
        )]
    return []


def _prop_coker_rank(ctx):
    if not ctx.is_singular:
        return []
    out = []
    d = ctx.d_graph
    report = boundary2_components(ctx.datum)
    for entry in report.branches:
        m = ctx.datum.branches[entry.branch].multiplicity
        # independent orbit oracle for the shift a -> a + k (mod m)
        seen = set()
        orbits = 0
        for start in range(m):
            if start in seen:
                continue
            orbits += 1
            a = start
            while a not in seen:
                seen.add(a)
                a = (a + entry.shift) % m
        if entry.coker.free_rank != orbits or entry.coker.torsion:
            out.append((
                f"branch {entry.branch + 1}: coker(A - I) free of rank {orbits}",
                f"rank {entry.coker.free_rank}, torsion {list(entry.coker.torsion)}",
                False,
            ))
        if entry.components % d != 0:
            out.append((
                f"branch {entry.branch + 1}: d | gcd(m, k)",
                f"d = {d}, gcd = {entry.components}",
                False,
            ))
        if not entry.chain_ok:
            out.append((
                f"branch {entry.branch + 1}: boundary components map onto fibre components",
                "chain_ok = False",
                False,
            ))
    return out


def _prop_upper_bound(ctx):
    if not ctx.is_singular:
        return []
    verdict = check_upper_bound(ctx.datum)
    if verdict.hypothesis and not verdict.conclusion_holds:
        return [(
            "rank bound attained forces identity vertical monodromies",
            f"cokernels_free = {verdict.cokernels_free}, "
            f"shifts_identity = {verdict.shifts_identity}",
            False,
        )]
    return []


def _prop_chi_form(ctx):
    if not ctx.is_singular:
        return []
    rep = ctx.beta_report
    if rep.c1_beta_zero and not rep.c2_chi_form:
        return [(
            "beta = 0 implies chi(F) = 1 - sum mu_perp",
            f"beta = 0, chi-form false (b0 = {rep.b0}, b1 = {rep.b1})",
            True,  # known discrepancy of the chi-form at curve level
        )]
    return []


_REGISTRY = (
    ("lemma-d-gcd", _prop_lemma_d_gcd, True),
    ("two-route-chi", _prop_two_route_chi, True),
    ("mu-reduced", _prop_mu_reduced, True),
    ("divide-by-gcd", _prop_divide_by_gcd, True),
    ("monodromy-cycle", _prop_monodromy_cycle, True),
    ("prop1-b1-xr", _prop_b1_zero_iff_xr, True),
    ("beta-nonneg", _prop_beta_nonneg, True),
    ("corollary-beta0", _prop_corollary_beta0, True),
    ("c1-iff-c3", _prop_c1_iff_c3, True),
    ("coker-rank", _prop_coker_rank, True),
    ("upper-bound", _prop_upper_bound, True),
    ("prop2-chi-form", _prop_chi_form, False),
)

DEFAULT_PROPERTIES = tuple(name for name, _, default in _REGISTRY if default)
ALL_PROPERTIES = tuple(name for name, _, _ in _REGISTRY)


def resolve_properties(names=None) -> tuple[str, ...]:
    """Normalize a requested property list to registry order."""
    if names is None:
        return DEFAULT_PROPERTIES
    requested = set(names)
    unknown = requested - set(ALL_PROPERTIES)
    if unknown:
        raise CurveSpecError(
            f"unknown properties {sorted(unknown)}; available: {', '.join(ALL_PROPERTIES)}"
        )
    return tuple(name for name in ALL_PROPERTIES if name in requested)


def check_datum(index: int, datum: EquisingularDatum, names) -> list[Violation]:
    ctx = _DatumContext(datum)
    table = dict((name, fn) for name, fn, _ in _REGISTRY)
    violations = []
    for name in names:
        for expected, got, documented in table[name](ctx):
            violations.append(Violation(index, datum, name, expected, got, documented))
    return violations


def _check_chunk(start: int, datums, names) -> list[Violation]:
    out = []
    for offset, datum in enumerate(datums):
        out.extend(check_datum(start + offset, datum, names))
    return out


def run_sweep(bounds: CorpusBounds, properties=None, jobs: int = 1) -> SweepResult:
    names = resolve_properties(properties)
    datums = list(enumerate_corpus(bounds))
    start_time = perf_counter()
    if jobs <= 1 or len(datums) < 2:
        violations = _check_chunk(0, datums, names)
    else:
        chunk_size = max(1, len(datums) // (jobs * 8))
        chunks = [
            (start, datums[start:start + chunk_size], names)
            for start in range(0, len(datums), chunk_size)
        ]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.starmap(_check_chunk, chunks)
        violations = [v for part in parts for v in part]
    elapsed = perf_counter() - start_time
    return SweepResult(bounds, names, len(datums), violations, elapsed)
