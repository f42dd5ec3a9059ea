"""Graph homotopy model of the Milnor fibre.

The fibre is assembled from sum(m_i) covering sheets, one affine-line copy
per sheet, with gcd(p, q) annuli glued in at every D[p,q] double point of
the network.  An open surface is homotopy equivalent to a graph, so each
annulus is modelled as a vertex with a loop edge (its core circle) plus
one incidence edge per boundary circle; this reproduces the local Euler
characteristic of the gluing exactly, and connectivity and b_1 follow
from union-find and V - E.

Sheet a of branch i attaches to annulus c of a node iff a = c mod gcd;
at a self node annulus c simply joins sheet c to itself on both sides.
The sheet shift a -> a+1 (mod m_i) is an automorphism of the graph and
realizes the Milnor monodromy on components.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .datum import EquisingularDatum, Branch, require_valid
from .errors import InternalInconsistencyError
from .network import build_network


@dataclass(frozen=True)
class _Gadget:
    """One expanded double point: g annuli starting at vertex ``base``."""

    branch_p: int
    branch_q: int
    p: int
    q: int
    g: int
    base: int


@dataclass(frozen=True)
class FibreGraph:
    datum: EquisingularDatum
    sheet_offsets: tuple[int, ...]
    sheet_count: int
    gadgets: tuple[_Gadget, ...]
    edges: tuple[tuple[int, int], ...]  # loops included, endpoints sorted
    vertex_count: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sheet_vertex(self, i: int, a: int) -> int:
        return self.sheet_offsets[i] + a

    def component_labels(self) -> list[int]:
        """Component id per vertex, numbered by first appearance."""
        parent = list(range(self.vertex_count))

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for u, v in self.edges:
            if u != v:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[rv] = ru
        labels = [-1] * self.vertex_count
        next_label = 0
        for v in range(self.vertex_count):
            root = find(v)
            if labels[root] == -1:
                labels[root] = next_label
                next_label += 1
            labels[v] = labels[root]
        return labels


@dataclass(frozen=True)
class FibreSummary:
    d: int
    b1: int
    chi: int
    chi_closed_form: int

    @property
    def b0(self) -> int:
        return self.d


@dataclass(frozen=True)
class ComponentMonodromy:
    permutation: tuple[int, ...]
    cycle_type: tuple[int, ...]


def build_fibre_graph(datum: EquisingularDatum) -> FibreGraph:
    """Expand every network node into its annulus gadget."""
    require_valid(datum)
    offsets = []
    total = 0
    for b in datum.branches:
        offsets.append(total)
        total += b.multiplicity
    sheet_count = total

    gadgets = []
    edges = []
    vertex = sheet_count
    for node in build_network(datum):
        bq = node.i if node.j is None else node.j
        g = gcd(node.p, node.q)
        for _ in range(node.copies):
            gadgets.append(_Gadget(node.i, bq, node.p, node.q, g, vertex))
            for c in range(g):
                av = vertex + c
                edges.append((av, av))  # core circle of the annulus
                for a in range(c, node.p, g):
                    edges.append((offsets[node.i] + a, av))
                for a in range(c, node.q, g):
                    edges.append((offsets[bq] + a, av))
            vertex += g
    return FibreGraph(
        datum, tuple(offsets), sheet_count, tuple(gadgets), tuple(edges), vertex
    )


def euler_characteristic_closed(datum: EquisingularDatum) -> int:
    """chi(F) = sum_i m_i (1 - 2 delta_i - sum_{j != i} I_ij).

    Bookkeeping of the construction: m_i sheets per branch, p + q deleted
    boundary discs per D[p,q] point, annuli contributing chi = 0.
    """
    require_valid(datum)
    total = 0
    for i, b in enumerate(datum.branches):
        others = sum(datum.intersections[i][j] for j in range(datum.r) if j != i)
        total += b.multiplicity * (1 - 2 * b.delta - others)
    return total


def fibre_summary(datum: EquisingularDatum) -> FibreSummary:
    """Components, b_1 and chi of the fibre, each checked by two routes."""
    graph = build_fibre_graph(datum)
    labels = graph.component_labels()
    d = max(labels) + 1
    chi = graph.vertex_count - graph.edge_count
    chi_closed = euler_characteristic_closed(datum)
    if chi != chi_closed:
        raise InternalInconsistencyError(
            f"chi mismatch: graph V-E gives {chi}, closed form gives {chi_closed}"
        )
    d_gcd = _gcd_all(datum.multiplicities)
    if d != d_gcd:
        raise InternalInconsistencyError(
            f"component mismatch: union-find gives {d}, gcd of multiplicities gives {d_gcd}"
        )
    return FibreSummary(d=d, b1=d - chi, chi=chi, chi_closed_form=chi_closed)


def _gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def _shift_permutation(graph: FibreGraph) -> list[int]:
    sigma = [0] * graph.vertex_count
    for i, b in enumerate(graph.datum.branches):
        off = graph.sheet_offsets[i]
        for a in range(b.multiplicity):
            sigma[off + a] = off + (a + 1) % b.multiplicity
    for gadget in graph.gadgets:
        for c in range(gadget.g):
            sigma[gadget.base + c] = gadget.base + (c + 1) % gadget.g
    return sigma


def component_monodromy(datum: EquisingularDatum) -> ComponentMonodromy:
    """Permutation of fibre components induced by the sheet shift a -> a + 1."""
    graph = build_fibre_graph(datum)
    sigma = _shift_permutation(graph)

    original = sorted((min(u, v), max(u, v)) for u, v in graph.edges)
    mapped = sorted(
        (min(sigma[u], sigma[v]), max(sigma[u], sigma[v])) for u, v in graph.edges
    )
    if original != mapped:
        raise InternalInconsistencyError(
            "sheet shift is not a graph automorphism (gluing convention broken)"
        )

    labels = graph.component_labels()
    d = max(labels) + 1
    perm = [-1] * d
    for v in range(graph.vertex_count):
        src, dst = labels[v], labels[sigma[v]]
        if perm[src] == -1:
            perm[src] = dst
        elif perm[src] != dst:
            raise InternalInconsistencyError(
                "shift maps one component to two different components"
            )
    cycle_type = _cycle_type(perm)
    return ComponentMonodromy(tuple(perm), cycle_type)


def _cycle_type(perm) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def divide_by_gcd(datum: EquisingularDatum) -> tuple[int, EquisingularDatum]:
    """Split off the gcd: f = g^d with g's multiplicities m_i / d."""
    require_valid(datum)
    d = _gcd_all(datum.multiplicities)
    reduced = EquisingularDatum(
        tuple(Branch(b.multiplicity // d, b.delta, b.label) for b in datum.branches),
        datum.intersections,
    )
    return d, reduced
