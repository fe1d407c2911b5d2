"""Graph-valued structured decompositions.

A decomposition has a *shape* digraph; every shape vertex carries a bag graph
and every shape arc ``x -> y`` carries a span ``bag(x) <- apex -> bag(y)`` of
monic homomorphisms (the adhesion).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
from scipy.cluster.hierarchy import DisjointSet

from .graphcore import (
    Graph,
    GraphHom,
    HomError,
    graph_pullback,
    is_mono,
    validate_hom,
)


class DecompositionError(ValueError):
    """Invalid structured decomposition; ``where`` names the offending shape element."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(message if where is None else f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class AdhesionSpan:
    apex: Graph
    leg_x: GraphHom
    leg_y: GraphHom


@dataclass(frozen=True)
class StructuredDecomposition:
    shape: Graph
    bags: tuple[Graph, ...]
    adhesions: tuple[AdhesionSpan, ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(self.bags))
        object.__setattr__(self, "adhesions", tuple(self.adhesions))

    def arc(self, e: int) -> tuple[int, int]:
        return self.shape.src[e], self.shape.tgt[e]


def single_bag(bag: Graph) -> StructuredDecomposition:
    return StructuredDecomposition(Graph(1), (bag,), ())


def check_shape(shape: Graph) -> None:
    """Shapes must be irreflexive, without antiparallel arcs, and without parallel arcs."""
    seen: dict[tuple[int, int], int] = {}
    for e, (s, t) in enumerate(shape.arcs):
        if s == t:
            raise DecompositionError(f"shape violates precondition: loop at vertex {s}", f"shape arc {e}")
        if (s, t) in seen:
            raise DecompositionError(
                f"shape violates precondition: arcs {seen[(s, t)]} and {e} are parallel ({s}->{t})",
                f"shape arc {e}",
            )
        if (t, s) in seen:
            raise DecompositionError(
                f"shape violates precondition: arcs {seen[(t, s)]} and {e} are antiparallel ({s}<->{t})",
                f"shape arc {e}",
            )
        seen[(s, t)] = e


def validate(d: StructuredDecomposition) -> None:
    check_shape(d.shape)
    if len(d.bags) != d.shape.nv:
        raise DecompositionError(f"{len(d.bags)} bags for {d.shape.nv} shape vertices")
    if len(d.adhesions) != d.shape.ne:
        raise DecompositionError(f"{len(d.adhesions)} adhesions for {d.shape.ne} shape arcs")
    for e, span in enumerate(d.adhesions):
        x, y = d.arc(e)
        for name, leg, bag in (("leg_x", span.leg_x, d.bags[x]), ("leg_y", span.leg_y, d.bags[y])):
            where = f"adhesion {e} ({x}->{y}) {name}"
            if leg.dom != span.apex or leg.cod != bag:
                raise DecompositionError("leg does not run from the apex into the endpoint bag", where)
            try:
                validate_hom(leg)
            except HomError as exc:
                raise DecompositionError(str(exc), where) from None
            if not is_mono(leg):
                raise DecompositionError("non-monic leg", where)


def width(d: StructuredDecomposition) -> int:
    return max((b.nv for b in d.bags), default=0)


@dataclass(frozen=True)
class Colimit:
    total: Graph
    cocone: tuple[GraphHom, ...]


def _offsets(sizes: Iterable[int]) -> list[int]:
    out, acc = [], 0
    for n in sizes:
        out.append(acc)
        acc += n
    return out


def _classes(n: int, merges: Iterable[tuple[int, int]]) -> list[int]:
    """Class number per element; classes numbered by their smallest member."""
    ds = DisjointSet(range(n))
    for a, b in merges:
        ds.merge(a, b)
    rep = list(range(n))
    for members in ds.subsets():
        low = min(members)
        for m in members:
            rep[m] = low
    numbering: dict[int, int] = {}
    for r in rep:
        if r not in numbering:
            numbering[r] = len(numbering)
    return [numbering[r] for r in rep]


def colim(d: StructuredDecomposition) -> Colimit:
    """Glue the bags along every adhesion span.

    Vertices and arcs of the total graph are the union-find classes of the
    disjoint union of the bags, numbered by smallest global index.
    """
    validate(d)
    voff = _offsets(b.nv for b in d.bags)
    eoff = _offsets(b.ne for b in d.bags)
    nv = sum(b.nv for b in d.bags)
    ne = sum(b.ne for b in d.bags)
    vmerge, emerge = [], []
    for e, span in enumerate(d.adhesions):
        x, y = d.arc(e)
        for a in range(span.apex.nv):
            vmerge.append((voff[x] + span.leg_x.vmap(a), voff[y] + span.leg_y.vmap(a)))
        for a in range(span.apex.ne):
            emerge.append((eoff[x] + span.leg_x.emap(a), eoff[y] + span.leg_y.emap(a)))
    vclass = _classes(nv, vmerge)
    eclass = _classes(ne, emerge)
    n_total_v = max(vclass, default=-1) + 1
    n_total_e = max(eclass, default=-1) + 1
    src = [0] * n_total_e
    tgt = [0] * n_total_e
    for b, bag in enumerate(d.bags):
        for i in range(bag.ne):
            c = eclass[eoff[b] + i]
            src[c] = vclass[voff[b] + bag.src[i]]
            tgt[c] = vclass[voff[b] + bag.tgt[i]]
    total = Graph(n_total_v, src, tgt)
    cocone = tuple(
        GraphHom.from_tables(
            bag,
            total,
            vclass[voff[b] : voff[b] + bag.nv],
            eclass[eoff[b] : eoff[b] + bag.ne],
        )
        for b, bag in enumerate(d.bags)
    )
    return Colimit(total, cocone)


def restrict_along_mono(d: StructuredDecomposition, f: GraphHom) -> StructuredDecomposition:
    """Pull ``d`` back along a monomorphism ``f: X -> colim(d)``.

    Bags become pullbacks of ``f`` with the cocone legs; adhesion apexes become
    pullbacks of ``f`` with the cocone restricted to the apex, and the new legs
    are the induced maps between those pullbacks.
    """
    cl = colim(d)
    if f.cod != cl.total:
        raise HomError("f must land in the colimit of the decomposition")
    validate_hom(f)
    if not is_mono(f):
        raise HomError("f must be monic")
    bag_pb = [graph_pullback(f, lam) for lam in cl.cocone]
    new_adhesions = []
    for e, span in enumerate(d.adhesions):
        x, y = d.arc(e)
        apb = graph_pullback(f, span.leg_x.then(cl.cocone[x]))
        legs = []
        for leg, bp in ((span.leg_x, bag_pb[x]), (span.leg_y, bag_pb[y])):
            vpos = {p: i for i, p in enumerate(bp.vertex_pairs)}
            epos = {p: i for i, p in enumerate(zip(bp.pa.emap.table, bp.pb.emap.table))}
            vt = [vpos[(p, leg.vmap(a))] for p, a in apb.vertex_pairs]
            et = [
                epos[(p, leg.emap(a))]
                for p, a in zip(apb.pa.emap.table, apb.pb.emap.table)
            ]
            legs.append(GraphHom.from_tables(apb.apex, bp.apex, vt, et))
        new_adhesions.append(AdhesionSpan(apb.apex, legs[0], legs[1]))
    out = StructuredDecomposition(d.shape, tuple(bp.apex for bp in bag_pb), tuple(new_adhesions))
    validate(out)
    return out


def undirected(shape: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(shape.nv))
    g.add_edges_from(shape.arcs)
    return g


def is_forest(shape: Graph) -> bool:
    return nx.is_forest(undirected(shape)) if shape.nv else True


def is_fvs(shape: Graph, S: Iterable[int]) -> bool:
    g = undirected(shape)
    g.remove_nodes_from(S)
    return g.number_of_nodes() == 0 or nx.is_forest(g)


def find_fvs(shape: Graph) -> tuple[int, ...]:
    """Minimum feedback vertex set of the underlying undirected shape.

    Branches on the vertices of a cycle, level by level in the budget ``k``;
    among all minimum sets the lexicographically smallest sorted tuple wins.
    """
    g = undirected(shape)
    for k in range(shape.nv + 1):
        found: set[tuple[int, ...]] = set()
        _branch(g, (), k, found)
        if found:
            return min(found)
    raise AssertionError("removing every vertex always leaves a forest")


def _branch(g: nx.Graph, chosen: tuple[int, ...], budget: int, found: set) -> None:
    core = nx.k_core(g, 2)
    if core.number_of_nodes() == 0:
        found.add(tuple(sorted(chosen)))
        return
    if budget == 0:
        return
    cyc = _short_cycle(core)
    for v in cyc:
        h = g.copy()
        h.remove_node(v)
        _branch(h, chosen + (v,), budget - 1, found)


def _short_cycle(g: nx.Graph, tries: int = 32) -> list[int]:
    # short cycles keep the branching factor low; scanning a few edges is enough
    best: list[int] | None = None
    h = g.copy()
    for u, v in sorted(g.edges())[:tries]:
        h.remove_edge(u, v)
        try:
            p = nx.shortest_path(h, u, v)
        except nx.NetworkXNoPath:
            p = None
        h.add_edge(u, v)
        if p is not None and (best is None or len(p) < len(best)):
            best = p
            if len(best) == 3:
                break
    if best is None:
        best = [u for u, _ in nx.find_cycle(g)]
    return sorted(best)


def remove_arcs(shape: Graph, arcs: Sequence[int]) -> tuple[Graph, list[int]]:
    """Shape without ``arcs``; also returns the surviving original arc indices."""
    drop = set(arcs)
    keep = [e for e in range(shape.ne) if e not in drop]
    return Graph(shape.nv, [shape.src[e] for e in keep], [shape.tgt[e] for e in keep]), keep
