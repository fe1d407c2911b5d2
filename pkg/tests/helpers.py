"""Independent brute-force oracles and random instance builders for the tests."""

import itertools
import random

from sheafdp.generate import random_decomposition, random_shape, random_simple_graph
from sheafdp.graphcore import Graph, complete
from sheafdp.problems import ProblemFunctor, codecomp_from_tables


def brute_homs(G: Graph, H: Graph):
    """Every vertex map checked against every arc; no pruning, no ordering tricks."""
    harcs = set(H.arcs)
    return [
        f
        for f in itertools.product(range(H.nv), repeat=G.nv)
        if all((f[s], f[t]) in harcs for s, t in G.arcs)
    ]


def brute_refl_homs(G: Graph, H: Graph):
    harcs, garcs = set(H.arcs), set(G.arcs)
    return [
        f
        for f in itertools.product(range(H.nv), repeat=G.nv)
        if all((x, y) in garcs for x in range(G.nv) for y in range(G.nv) if (f[x], f[y]) in harcs)
    ]


def brute_families(c):
    """Matching families by full product over live subsets."""
    return [
        fam
        for fam in itertools.product(*c.live)
        if all(c.rho_x[e](fam[x]) == c.rho_y[e](fam[y]) for e, (x, y) in enumerate(c.shape.arcs))
    ]


def random_target(rng: random.Random) -> Graph:
    pick = rng.randrange(4)
    if pick < 3:
        return complete(pick + 2)
    return random_simple_graph(rng, rng.randint(2, 4), 0.6, directed=rng.random() < 0.5)


def random_instance(seed: int, max_nodes=8, max_extra=2, width=5, kinds=("hcoloring", "refl_hcoloring"), fresh_max=1):
    rng = random.Random(seed)
    shape = random_shape(rng, rng.randint(1, max_nodes), rng.randint(0, max_extra))
    d = random_decomposition(rng, shape, width, edge_prob=rng.choice([0.4, 0.6]), fresh_max=fresh_max)
    F = ProblemFunctor(rng.choice(kinds), random_target(rng))
    return F, d


def random_forest(rng: random.Random, n: int) -> Graph:
    arcs = []
    for v in range(1, n):
        if rng.random() < 0.8:
            p = rng.randrange(v)
            arcs.append((p, v) if rng.random() < 0.5 else (v, p))
    return Graph(n, [a for a, _ in arcs], [b for _, b in arcs])


def random_shape_any(rng: random.Random, n: int) -> Graph:
    """Forest plus a few non-tree arcs (no loops, no parallel or antiparallel arcs)."""
    g = random_forest(rng, n)
    used = {frozenset(a) for a in g.arcs}
    arcs = list(g.arcs)
    for _ in range(rng.randint(0, 3)):
        u, v = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if u != v and frozenset((u, v)) not in used:
            used.add(frozenset((u, v)))
            arcs.append((u, v))
    return Graph(n, [a for a, _ in arcs], [b for _, b in arcs])


def random_codecomp(rng: random.Random, shape: Graph, kappa: int = 20, adhesion=(4, 8), full_live=False):
    """Abstract co-decomposition with random restriction maps."""
    sizes = [rng.randint(1, kappa) for _ in range(shape.nv)]
    adh = [rng.randint(*adhesion) for _ in range(shape.ne)]
    rx = [[rng.randrange(adh[e]) for _ in range(sizes[x])] for e, (x, _) in enumerate(shape.arcs)]
    ry = [[rng.randrange(adh[e]) for _ in range(sizes[y])] for e, (_, y) in enumerate(shape.arcs)]
    live = None
    if not full_live:
        live = [sorted(rng.sample(range(n), rng.randint(1, n))) for n in sizes]
    return codecomp_from_tables(shape, sizes, adh, rx, ry, live)
