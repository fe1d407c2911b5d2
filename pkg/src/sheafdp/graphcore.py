"""Finite directed multigraphs and homomorphisms between them.

Symmetric simple graphs are encoded with both arc orientations, so ``K_n``,
cycles and paths built by the helpers below are digraphs whose homomorphisms
coincide with undirected graph homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .finset import FinFn, FinSet, identity, pullback


class HomError(ValueError):
    """A vertex/arc map fails to be a graph homomorphism."""

    def __init__(self, message: str, arc: int | None = None):
        super().__init__(message)
        self.arc = arc


@dataclass(frozen=True)
class Graph:
    nv: int
    src: tuple[int, ...] = ()
    tgt: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "src", tuple(self.src))
        object.__setattr__(self, "tgt", tuple(self.tgt))
        if self.nv < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.src) != len(self.tgt):
            raise ValueError(f"src has {len(self.src)} entries but tgt has {len(self.tgt)}")
        for e, (s, t) in enumerate(zip(self.src, self.tgt)):
            if not (0 <= s < self.nv and 0 <= t < self.nv):
                raise ValueError(f"arc {e} ({s}->{t}) has an endpoint outside 0..{self.nv - 1}")

    @property
    def ne(self) -> int:
        return len(self.src)

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.src, self.tgt))

    def vertices(self) -> FinSet:
        return FinSet(self.nv)

    def edges(self) -> FinSet:
        return FinSet(self.ne)

    def is_simple(self) -> bool:
        return len(set(self.arcs)) == self.ne

    def arc_index(self) -> dict[tuple[int, int], int]:
        """Map ``(s, t)`` to the first arc with those endpoints."""
        index: dict[tuple[int, int], int] = {}
        for e, st in enumerate(self.arcs):
            index.setdefault(st, e)
        return index

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", "GraphHom"]:
        """Induced subgraph on ``vertices`` (in the given order) and its inclusion."""
        pos = {v: i for i, v in enumerate(vertices)}
        src, tgt, emap = [], [], []
        for e, (s, t) in enumerate(self.arcs):
            if s in pos and t in pos:
                src.append(pos[s])
                tgt.append(pos[t])
                emap.append(e)
        sub = Graph(len(vertices), src, tgt)
        return sub, GraphHom.from_tables(sub, self, vertices, emap)


def symmetric(nv: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Symmetric encoding of an undirected simple graph (both orientations per edge)."""
    src, tgt = [], []
    for u, v in edges:
        if u == v:
            src.append(u)
            tgt.append(u)
        else:
            src += [u, v]
            tgt += [v, u]
    return Graph(nv, src, tgt)


def complete(n: int) -> Graph:
    return symmetric(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n: int) -> Graph:
    return symmetric(n, [(i, (i + 1) % n) for i in range(n)])


def path(nv: int) -> Graph:
    """Path on ``nv`` vertices (``nv - 1`` edges)."""
    return symmetric(nv, [(i, i + 1) for i in range(nv - 1)])


def discrete(n: int) -> Graph:
    return Graph(n)


@dataclass(frozen=True)
class GraphHom:
    dom: Graph
    cod: Graph
    vmap: FinFn
    emap: FinFn

    @classmethod
    def from_tables(cls, dom: Graph, cod: Graph, vtable: Sequence[int], etable: Sequence[int]) -> "GraphHom":
        return cls(
            dom,
            cod,
            FinFn(FinSet(len(vtable)), FinSet(cod.nv), tuple(vtable)),
            FinFn(FinSet(len(etable)), FinSet(cod.ne), tuple(etable)),
        )

    @classmethod
    def identity(cls, g: Graph) -> "GraphHom":
        return cls(g, g, identity(g.nv), identity(g.ne))

    def then(self, other: "GraphHom") -> "GraphHom":
        """``other ∘ self``."""
        if self.cod != other.dom:
            raise HomError("cannot compose homomorphisms: codomain and domain differ")
        vt = tuple(other.vmap.table[v] for v in self.vmap.table)
        et = tuple(other.emap.table[e] for e in self.emap.table)
        return GraphHom.from_tables(self.dom, other.cod, vt, et)


def validate_hom(h: GraphHom, G: Graph | None = None, H: Graph | None = None) -> None:
    """Raise :class:`HomError` unless ``h`` is a homomorphism ``G -> H``.

    ``G`` and ``H`` default to the graphs stored on ``h``. The error carries
    the index of the first arc whose naturality square fails.
    """
    G = h.dom if G is None else G
    H = h.cod if H is None else H
    if h.vmap.dom.size != G.nv or h.vmap.cod.size != H.nv:
        raise HomError(f"vertex map is {h.vmap.dom.size}->{h.vmap.cod.size}, expected {G.nv}->{H.nv}")
    if h.emap.dom.size != G.ne or h.emap.cod.size != H.ne:
        raise HomError(f"arc map is {h.emap.dom.size}->{h.emap.cod.size}, expected {G.ne}->{H.ne}")
    v, em = h.vmap.table, h.emap.table
    for e in range(G.ne):
        f = em[e]
        if H.src[f] != v[G.src[e]] or H.tgt[f] != v[G.tgt[e]]:
            raise HomError(
                f"naturality fails at arc {e}: {G.src[e]}->{G.tgt[e]} maps to arc {f} "
                f"({H.src[f]}->{H.tgt[f]}) but vertices map to {v[G.src[e]]}->{v[G.tgt[e]]}",
                arc=e,
            )


def is_mono(h: GraphHom) -> bool:
    return h.vmap.is_injective() and h.emap.is_injective()


@dataclass(frozen=True)
class SolutionSet:
    """Canonically ordered sections of a problem functor over ``source``.

    Sections are vertex maps stored as tuples; the position of a section in
    ``sections`` is its index in the underlying finite set.
    """

    source: Graph
    sections: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sections", tuple(self.sections))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.sections)})
        if len(self._index) != len(self.sections):
            raise ValueError("duplicate sections")

    def __len__(self):
        return len(self.sections)

    def __iter__(self):
        return iter(self.sections)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.sections[i]

    def __contains__(self, s) -> bool:
        return tuple(s) in self._index

    def index(self, s: Sequence[int]) -> int:
        return self._index[tuple(s)]

    def get(self, s: Sequence[int]) -> int | None:
        return self._index.get(tuple(s))

    def finset(self) -> FinSet:
        return FinSet(len(self.sections))


def _earlier_arcs(G: Graph) -> list[list[tuple[int, int]]]:
    # arcs checked when vertex v gets assigned: both endpoints <= v, max endpoint == v
    per_vertex: list[list[tuple[int, int]]] = [[] for _ in range(G.nv)]
    for s, t in set(G.arcs):
        per_vertex[max(s, t)].append((s, t))
    return per_vertex


def _backtrack(nv: int, choices: int, ok) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    assignment = [0] * nv

    def rec(v: int):
        if v == nv:
            out.append(tuple(assignment))
            return
        for c in range(choices):
            assignment[v] = c
            if ok(v, assignment):
                rec(v + 1)

    rec(0)
    return out


def enumerate_homs(G: Graph, H: Graph) -> SolutionSet:
    """All homomorphisms ``G -> H`` as vertex tuples, lexicographically ordered.

    ``H`` must be simple so that the arc map is determined by the vertex map.
    """
    if not H.is_simple():
        raise ValueError("enumerate_homs needs a simple target (at most one arc per ordered pair)")
    harcs = set(H.arcs)
    checks = _earlier_arcs(G)

    def ok(v, a):
        return all((a[s], a[t]) in harcs for s, t in checks[v])

    return SolutionSet(G, _backtrack(G.nv, H.nv, ok))


def enumerate_refl_homs(G: Graph, H: Graph) -> SolutionSet:
    """Vertex maps ``f`` with ``f(x)f(y) in EH  =>  xy in EG`` for all ordered pairs."""
    harcs = set(H.arcs)
    garcs = set(G.arcs)

    def ok(v, a):
        for u in range(v + 1):
            if (a[u], a[v]) in harcs and (u, v) not in garcs:
                return False
            if (a[v], a[u]) in harcs and (v, u) not in garcs:
                return False
        return True

    return SolutionSet(G, _backtrack(G.nv, H.nv, ok))


def section_to_hom(section: Sequence[int], G: Graph, H: Graph) -> GraphHom:
    """Lift a vertex map into a simple ``H`` to the homomorphism it induces."""
    idx = H.arc_index()
    try:
        etable = [idx[(section[s], section[t])] for s, t in G.arcs]
    except KeyError as exc:
        raise HomError(f"vertex map {tuple(section)} sends an arc to the non-arc {exc.args[0]}") from None
    return GraphHom.from_tables(G, H, section, etable)


@dataclass(frozen=True)
class GraphPullback:
    apex: Graph
    pa: GraphHom
    pb: GraphHom
    vertex_pairs: tuple[tuple[int, int], ...]


def graph_pullback(f: GraphHom, g: GraphHom) -> GraphPullback:
    """Pointwise pullback of ``A --f--> C <--g-- B`` in directed multigraphs."""
    if f.cod != g.cod:
        raise HomError("cospan codomains differ")
    vp = pullback(f.vmap, g.vmap)
    ep = pullback(f.emap, g.emap)
    vpairs = tuple(vp.pairs)
    pos = {p: i for i, p in enumerate(vpairs)}
    A, B = f.dom, g.dom
    src, tgt = [], []
    for ea, eb in ep.pairs:
        src.append(pos[(A.src[ea], B.src[eb])])
        tgt.append(pos[(A.tgt[ea], B.tgt[eb])])
    apex = Graph(len(vpairs), src, tgt)
    pa = GraphHom(apex, A, vp.pa, ep.pa)
    pb = GraphHom(apex, B, vp.pb, ep.pb)
    return GraphPullback(apex, pa, pb, vpairs)
