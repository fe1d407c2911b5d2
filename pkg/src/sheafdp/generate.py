"""Seeded random instances.

Decompositions are built gluing-recipe first: a spanning tree of the shape is
walked from a root bag, and each child bag copies an induced piece of its
parent (the adhesion) before fresh vertices are added. Legs are therefore
monic induced embeddings by construction. Non-tree arcs glue single vertices.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass

from .decomp import AdhesionSpan, StructuredDecomposition, find_fvs
from .graphcore import Graph, GraphHom, complete, cycle, path, symmetric
from .instances import cyclic_path_cover, inclusion
from .io import Instance
from .problems import ProblemFunctor

GEN_KINDS = ("tree", "cyclic", "random")


@dataclass
class GenConfig:
    kind: str = "tree"
    bags: int = 4
    width: int = 4
    fvs: int = 0
    seed: int = 0
    edge_prob: float = 0.5
    # cap on fresh vertices per child bag; None means up to the width
    fresh_max: int | None = None
    problem: str = "hcoloring"
    target: str = "K3"


def parse_target(spec: str) -> Graph:
    """``K<n>``, ``C<n>`` or ``P<n>`` (symmetric complete graph, cycle, path)."""
    m = re.fullmatch(r"([KCP])(\d+)", spec.strip())
    if not m:
        raise ValueError(f"target {spec!r} should look like K3, C5 or P4")
    n = int(m.group(2))
    return {"K": complete, "C": cycle, "P": path}[m.group(1)](n)


def random_simple_graph(rng: random.Random, n: int, p: float = 0.5, directed: bool = False) -> Graph:
    if directed:
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        return Graph(n, [a for a, _ in arcs], [b for _, b in arcs])
    return symmetric(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_tree_shape(rng: random.Random, n: int) -> list[tuple[int, int]]:
    arcs = []
    for v in range(1, n):
        p = rng.randrange(v)
        arcs.append((p, v) if rng.random() < 0.5 else (v, p))
    return arcs


def random_shape(rng: random.Random, n: int, extra: int) -> Graph:
    """Random tree plus up to ``extra`` non-tree arcs (so feedback vertex number <= extra)."""
    arcs = random_tree_shape(rng, n)
    used = {frozenset(a) for a in arcs}
    free = [(u, v) for u in range(n) for v in range(u + 1, n) if frozenset((u, v)) not in used]
    rng.shuffle(free)
    for u, v in free[:extra]:
        arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Graph(n, [a for a, _ in arcs], [b for _, b in arcs])


def _child_bag(rng: random.Random, parent: Graph, width: int, fresh_max: int, p: float):
    k = rng.randint(1, min(parent.nv, width)) if parent.nv else 0
    shared = sorted(rng.sample(range(parent.nv), k))
    room = width - k
    fresh = rng.randint(0 if k else 1, max(0, min(room, fresh_max)))
    apex, into_parent = parent.induced(shared)
    n = k + fresh
    edges = [(a, b) for a, b in zip(apex.src, apex.tgt)]
    for v in range(k, n):
        for u in range(v):
            if rng.random() < p:
                edges += [(u, v), (v, u)]
    child = Graph(n, [a for a, _ in edges], [b for _, b in edges])
    into_child = GraphHom.from_tables(apex, child, list(range(k)), list(range(apex.ne)))
    return child, apex, into_parent, into_child


def random_decomposition(
    rng: random.Random,
    shape: Graph,
    width: int,
    edge_prob: float = 0.5,
    fresh_max: int | None = None,
) -> StructuredDecomposition:
    fresh_max = width if fresh_max is None else fresh_max
    adj: list[list[int]] = [[] for _ in range(shape.nv)]
    for e, (s, t) in enumerate(shape.arcs):
        adj[s].append(e)
        adj[t].append(e)
    bags: list[Graph | None] = [None] * shape.nv
    spans: list[AdhesionSpan | None] = [None] * shape.ne
    for root in range(shape.nv):
        if bags[root] is not None:
            continue
        bags[root] = random_simple_graph(rng, rng.randint(1, width), edge_prob)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                s, t = shape.src[e], shape.tgt[e]
                w = t if s == u else s
                if bags[w] is not None:
                    continue
                child, apex, into_parent, into_child = _child_bag(rng, bags[u], width, fresh_max, edge_prob)
                bags[w] = child
                spans[e] = (
                    AdhesionSpan(apex, into_parent, into_child)
                    if s == u
                    else AdhesionSpan(apex, into_child, into_parent)
                )
                queue.append(w)
    for e, (s, t) in enumerate(shape.arcs):
        if spans[e] is not None:
            continue
        bx, by = bags[s], bags[t]
        if bx.nv and by.nv and rng.random() < 0.85:
            point = Graph(1)
            spans[e] = AdhesionSpan(
                point,
                inclusion(point, bx, [rng.randrange(bx.nv)]),
                inclusion(point, by, [rng.randrange(by.nv)]),
            )
        else:
            empty = Graph(0)
            spans[e] = AdhesionSpan(empty, inclusion(empty, bx, []), inclusion(empty, by, []))
    return StructuredDecomposition(shape, tuple(bags), tuple(spans))


def generate(cfg: GenConfig) -> Instance:
    rng = random.Random(cfg.seed)
    problem = ProblemFunctor(cfg.problem, parse_target(cfg.target))
    if cfg.kind == "cyclic":
        d = cyclic_path_cover(cfg.bags, cfg.width)
    elif cfg.kind == "tree":
        d = random_decomposition(rng, random_shape(rng, cfg.bags, 0), cfg.width, cfg.edge_prob, cfg.fresh_max)
    elif cfg.kind == "random":
        d = random_decomposition(rng, random_shape(rng, cfg.bags, cfg.fvs), cfg.width, cfg.edge_prob, cfg.fresh_max)
    else:
        raise ValueError(f"unknown kind {cfg.kind!r}; expected one of {GEN_KINDS}")
    return Instance(problem, d, find_fvs(d.shape))
