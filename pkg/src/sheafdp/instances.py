"""Hand-built decompositions used by the self-test, the generator and the tests."""

from __future__ import annotations

from .decomp import AdhesionSpan, StructuredDecomposition
from .graphcore import Graph, GraphHom, discrete, path
from .problems import SolCoDecomp, codecomp_from_tables


def inclusion(sub: Graph, g: Graph, vertices) -> GraphHom:
    """Vertex inclusion of ``sub`` into ``g``, arcs matched by endpoints."""
    idx = g.arc_index()
    etable = [idx[(vertices[s], vertices[t])] for s, t in sub.arcs]
    return GraphHom.from_tables(sub, g, vertices, etable)


def two_paths_c5() -> StructuredDecomposition:
    """A 5-cycle split into a 2-edge path and a 3-edge path glued at their ends."""
    p3, p4, ends = path(3), path(4), discrete(2)
    span = AdhesionSpan(ends, inclusion(ends, p3, [0, 2]), inclusion(ends, p4, [0, 3]))
    return StructuredDecomposition(Graph(2, [0], [1]), (p3, p4), (span,))


def cyclic_path_cover(bags: int, width: int = 2) -> StructuredDecomposition:
    """Cycle-shaped decomposition of ``C_{bags*(width-1)}``.

    Bag ``i`` is a path on ``width`` consecutive cycle vertices; consecutive
    bags share one endpoint. ``bags=5, width=2`` gives five single-edge bags
    glued at single vertices around a 5-cycle.
    """
    if bags < 3 or width < 2:
        raise ValueError("a cyclic cover needs at least 3 bags of width at least 2")
    bag = path(width)
    point = discrete(1)
    shape = Graph(bags, list(range(bags)), [(i + 1) % bags for i in range(bags)])
    span = AdhesionSpan(point, inclusion(point, bag, [width - 1]), inclusion(point, bag, [0]))
    return StructuredDecomposition(shape, (bag,) * bags, (span,) * bags)


def equality_chain() -> SolCoDecomp:
    """Path shape a-b-c-d with equality constraints and clashing end bags.

    Arcs are listed as ab, bc, cd. The end bags admit only 0 (at a) and only 1
    (at d), so there is no matching family, yet one pass in the order
    bc, ab, cd leaves every bag non-empty.
    """
    shape = Graph(4, [0, 1, 2], [1, 2, 3])
    return codecomp_from_tables(
        shape,
        bag_sizes=[2, 2, 2, 2],
        adhesion_sizes=[2, 2, 2],
        rho_x=[[0, 1]] * 3,
        rho_y=[[0, 1]] * 3,
        live=[[0], [0, 1], [0, 1], [1]],
    )


EQUALITY_CHAIN_ORDER = (1, 0, 2)
