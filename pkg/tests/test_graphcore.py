import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_homs, brute_refl_homs
from sheafdp.decomp import colim
from sheafdp.generate import random_simple_graph
from sheafdp.graphcore import (
    Graph,
    GraphHom,
    HomError,
    complete,
    cycle,
    discrete,
    enumerate_homs,
    enumerate_refl_homs,
    graph_pullback,
    is_mono,
    path,
    section_to_hom,
    validate_hom,
)
from sheafdp.instances import inclusion, two_paths_c5


@st.composite
def digraphs(draw, max_nv=4, max_ne=6):
    nv = draw(st.integers(0, max_nv))
    if nv == 0:
        return Graph(0)
    arcs = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), max_size=max_ne))
    return Graph(nv, [a for a, _ in arcs], [b for _, b in arcs])


@st.composite
def simple_digraphs(draw, max_nv=3):
    nv = draw(st.integers(1, max_nv))
    pairs = [(u, v) for u in range(nv) for v in range(nv)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(nv, [a for a, _ in chosen], [b for _, b in chosen])


def test_graph_rejects_bad_endpoint():
    with pytest.raises(ValueError):
        Graph(2, [0], [2])


def test_symmetric_encodings():
    assert complete(3).ne == 6
    assert cycle(5).ne == 10
    assert path(4).ne == 6
    assert complete(3).is_simple()


def test_validate_identity():
    for g in (complete(3), cycle(5), Graph(2, [0, 0], [1, 1])):
        validate_hom(GraphHom.identity(g))


def test_validate_terminal_loop():
    g = path(3)
    loop = Graph(1, [0], [0])
    validate_hom(GraphHom.from_tables(g, loop, [0] * g.nv, [0] * g.ne))


def test_validate_reports_arc():
    g = Graph(2, [0], [1])
    h = GraphHom.from_tables(g, complete(2), [0, 0], [0])
    with pytest.raises(HomError) as exc:
        validate_hom(h)
    assert exc.value.arc == 0


def test_validate_size_mismatch():
    g = path(2)
    h = GraphHom.from_tables(g, complete(2), [0], [0, 1])
    with pytest.raises(HomError):
        validate_hom(h)


def test_is_mono():
    assert is_mono(GraphHom.identity(cycle(4)))
    assert not is_mono(GraphHom.from_tables(discrete(2), discrete(1), [0, 0], []))
    c5 = cycle(5)
    p3_in_c5 = inclusion(path(3), c5, [0, 1, 2])
    validate_hom(p3_in_c5)
    assert is_mono(p3_in_c5)


def test_hom_counts_small():
    assert len(enumerate_homs(complete(2), complete(2))) == 2
    assert len(enumerate_homs(cycle(5), complete(2))) == 0


def test_hom_count_c5_k3_matches_brute_force():
    expected = len(brute_homs(cycle(5), complete(3)))
    assert expected == 30
    assert len(enumerate_homs(cycle(5), complete(3))) == expected


def test_homs_reject_multigraph_target():
    with pytest.raises(ValueError):
        enumerate_homs(path(2), Graph(2, [0, 0], [1, 1]))


@given(digraphs(), simple_digraphs())
def test_homs_equal_brute_force(G, H):
    sols = enumerate_homs(G, H)
    assert list(sols) == brute_homs(G, H)
    for s in sols:
        validate_hom(section_to_hom(s, G, H))


def test_refl_homs_small():
    assert len(enumerate_refl_homs(path(3), discrete(3))) == 27
    assert len(enumerate_refl_homs(Graph(0), complete(2))) == 1
    expected = brute_refl_homs(complete(2), complete(2))
    assert len(expected) == 4
    assert list(enumerate_refl_homs(complete(2), complete(2))) == expected


@given(digraphs(), digraphs(max_nv=3))
def test_refl_homs_equal_brute_force(G, H):
    assert list(enumerate_refl_homs(G, H)) == brute_refl_homs(G, H)


def test_hom_count_monotone_under_added_arc():
    rng = random.Random(1)
    for _ in range(60):
        G = random_simple_graph(rng, rng.randint(1, 6), 0.4, directed=True)
        H = random_simple_graph(rng, rng.randint(1, 3), 0.6, directed=True)
        u, v = rng.randrange(G.nv), rng.randrange(G.nv)
        G2 = Graph(G.nv, G.src + (u,), G.tgt + (v,))
        assert len(enumerate_homs(G2, H)) <= len(enumerate_homs(G, H))


def test_precomposition_along_mono_lands_in_hom_set():
    rng = random.Random(2)
    for _ in range(40):
        B = random_simple_graph(rng, rng.randint(1, 6), 0.5)
        keep = sorted(rng.sample(range(B.nv), rng.randint(0, B.nv)))
        A, m = B.induced(keep)
        H = complete(rng.randint(2, 3))
        homs_a = set(enumerate_homs(A, H))
        for s in enumerate_homs(B, H):
            assert tuple(s[v] for v in m.vmap.table) in homs_a


def test_pullback_identity():
    c = cycle(5)
    pb = graph_pullback(GraphHom.identity(c), GraphHom.identity(c))
    assert (pb.apex.nv, pb.apex.ne) == (c.nv, c.ne)


def test_pullback_disjoint_subgraphs():
    total = Graph(4, [0, 2], [1, 3])
    a, ia = total.induced([0, 1])
    b, ib = total.induced([2, 3])
    pb = graph_pullback(ia, ib)
    assert (pb.apex.nv, pb.apex.ne) == (0, 0)


def test_pullback_of_two_paths_in_c5():
    cl = colim(two_paths_c5())
    pb = graph_pullback(cl.cocone[0], cl.cocone[1])
    # P3 and P4 share exactly their two endpoints and no edge
    assert (pb.apex.nv, pb.apex.ne) == (2, 0)
    validate_hom(pb.pa)
    validate_hom(pb.pb)


def test_pullback_of_monos_is_monic_exhaustive():
    # every pair of vertex subsets of every graph on <= 4 vertices, induced inclusions
    rng = random.Random(3)
    for nv in range(5):
        for _ in range(6):
            C = random_simple_graph(rng, nv, 0.5, directed=True) if nv else Graph(0)
            subsets = [s for r in range(nv + 1) for s in itertools.combinations(range(nv), r)]
            for sa in subsets:
                for sb in subsets:
                    _, fa = C.induced(list(sa))
                    _, fb = C.induced(list(sb))
                    pb = graph_pullback(fa, fb)
                    validate_hom(pb.pa)
                    validate_hom(pb.pb)
                    assert is_mono(pb.pa) and is_mono(pb.pb)
                    assert pb.apex.nv == len(set(sa) & set(sb))


def test_pullback_codomain_mismatch():
    with pytest.raises(HomError):
        graph_pullback(GraphHom.identity(path(2)), GraphHom.identity(path(3)))
