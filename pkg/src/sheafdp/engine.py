"""Decision pipeline over solution-space co-decompositions.

Pullback filtering along single arcs, whole-shape filtering schedules, the
two-pass tree solver, the feedback-vertex-set branching solver, and the
brute-force oracles (matching families and glue-then-solve) used to check them.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .decomp import StructuredDecomposition, colim, find_fvs, is_forest, is_fvs, validate
from .finset import image, pullback, restrict_to
from .graphcore import Graph
from .problems import ProblemFunctor, SolCoDecomp, apply_sd, eval, is_section, precompose

DEFAULT_ORACLE_CAP = 10**7
ORDERS = ("as-given", "leaf-to-root", "fixpoint")


class OracleCapExceeded(RuntimeError):
    def __init__(self, bound: int, cap: int):
        super().__init__(f"oracle search exceeded its cap of {cap} nodes (live-subset product bound {bound})")
        self.bound = bound
        self.cap = cap


class ShapeError(ValueError):
    """The shape does not meet an operation's precondition (forest, FVS)."""


def oracle_cap() -> int:
    return int(os.environ.get("SHEAFDP_ORACLE_CAP", DEFAULT_ORACLE_CAP))


MatchingFamily = tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    answer: bool
    witness: MatchingFamily | None = None
    live_counts: tuple[int, ...] = ()
    passes: int = 0
    count: int | None = None

    def __bool__(self):
        return self.answer

    @property
    def symbol(self) -> str:
        return "⊤" if self.answer else "⊥"


# -- single-arc filtering -------------------------------------------------


def _filter_arc(c: SolCoDecomp, e: int, live: list[tuple[int, ...]]) -> bool:
    """Filter arc ``e`` in place on ``live``; return whether anything shrank."""
    x, y = c.arc(e)
    lx, ly = live[x], live[y]
    pb = pullback(restrict_to(c.rho_x[e], lx), restrict_to(c.rho_y[e], ly))
    new_x = tuple(lx[i] for i in image(pb.pa).elements)
    new_y = tuple(sorted(ly[i] for i in image(pb.pb).elements))
    changed = len(new_x) != len(lx) or len(new_y) != len(ly)
    live[x] = new_x
    live[y] = new_y
    return changed


def filter_edge(c: SolCoDecomp, e: int) -> SolCoDecomp:
    """Replace the live subsets at both ends of ``e`` by the images of the pullback projections."""
    if not 0 <= e < c.shape.ne:
        raise IndexError(f"arc {e} out of range for a shape with {c.shape.ne} arcs")
    live = list(c.live)
    _filter_arc(c, e, live)
    return c.with_live(live)


# -- schedules ------------------------------------------------------------


def _adjacency(shape: Graph) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(shape.nv)]
    for e, (s, t) in enumerate(shape.arcs):
        adj[s].append((t, e))
        adj[t].append((s, e))
    return adj


def rooted_order(shape: Graph) -> list[int]:
    """Arcs of a forest in BFS order from each component's smallest vertex.

    Reversed, every arc comes after all arcs strictly below it.
    """
    if not is_forest(shape):
        raise ShapeError("shape is not a forest")
    adj = _adjacency(shape)
    seen = [False] * shape.nv
    order: list[int] = []
    for root in range(shape.nv):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, e in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    order.append(e)
                    queue.append(w)
    return order


def filter_all(c: SolCoDecomp, order: str = "fixpoint", edges: Sequence[int] | None = None) -> SolCoDecomp:
    """Run single-arc filtering across the shape.

    ``as-given`` is one pass over ``edges`` (default: arc index order);
    ``leaf-to-root`` processes each tree component bottom-up;
    ``fixpoint`` repeats index-order passes until nothing shrinks.
    """
    live = list(c.live)
    if order == "as-given":
        seq = list(range(c.shape.ne)) if edges is None else list(edges)
        if sorted(seq) != list(range(c.shape.ne)):
            raise ValueError(f"edge list {seq} is not a permutation of the {c.shape.ne} arcs")
        for e in seq:
            _filter_arc(c, e, live)
    elif order == "leaf-to-root":
        for e in reversed(rooted_order(c.shape)):
            _filter_arc(c, e, live)
    elif order == "fixpoint":
        changed = True
        while changed:
            changed = False
            for e in range(c.shape.ne):
                changed |= _filter_arc(c, e, live)
    else:
        raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")
    return c.with_live(live)


# -- trees ----------------------------------------------------------------


def _tree_solve(c: SolCoDecomp, live: list[tuple[int, ...]], order: list[int]) -> MatchingFamily | None:
    """Two-pass filtering in place; returns a witness or ``None`` (then all live emptied)."""
    for e in reversed(order):
        _filter_arc(c, e, live)
    for e in order:
        _filter_arc(c, e, live)
    if any(not lv for lv in live):
        for v in range(len(live)):
            live[v] = ()
        return None
    return _extract_witness(c, live)


def _extract_witness(c: SolCoDecomp, live) -> MatchingFamily:
    # after both passes every chosen value has a consistent neighbour downstream
    adj = _adjacency(c.shape)
    choice = [-1] * c.shape.nv
    for root in range(c.shape.nv):
        if choice[root] >= 0:
            continue
        choice[root] = live[root][0]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, e in adj[u]:
                if choice[w] >= 0:
                    continue
                if u == c.shape.src[e]:
                    want = c.rho_x[e](choice[u])
                    choice[w] = next(i for i in live[w] if c.rho_y[e](i) == want)
                else:
                    want = c.rho_y[e](choice[u])
                    choice[w] = next(i for i in live[w] if c.rho_x[e](i) == want)
                queue.append(w)
    return tuple(choice)


def tree_solve(c: SolCoDecomp) -> tuple[SolCoDecomp, Verdict]:
    """Compute the A-bags of a forest-shaped co-decomposition.

    Leaf-to-root then root-to-leaf filtering per component. If any bag empties
    the limit is empty, so every bag is emptied.
    """
    order = rooted_order(c.shape)
    live = list(c.live)
    witness = _tree_solve(c, live, order)
    out = c.with_live(live)
    return out, Verdict(witness is not None, witness, out.live_sizes(), passes=2)


# -- oracles --------------------------------------------------------------


def is_matching_family(c: SolCoDecomp, family: Sequence[int]) -> bool:
    return len(family) == c.shape.nv and all(
        c.rho_x[e](family[x]) == c.rho_y[e](family[y]) for e, (x, y) in enumerate(c.shape.arcs)
    )


def limit_sections(c: SolCoDecomp, cap: int | None = None) -> list[MatchingFamily]:
    """All matching families over the live subsets, lexicographic by shape vertex.

    Plain backtracking: an arc is checked once both of its endpoints are fixed.
    """
    cap = oracle_cap() if cap is None else cap
    n = c.shape.nv
    checks: list[list[int]] = [[] for _ in range(n)]
    for e, (x, y) in enumerate(c.shape.arcs):
        checks[max(x, y)].append(e)
    bound = 1
    for lv in c.live:
        bound *= len(lv)
    out: list[MatchingFamily] = []
    choice = [0] * n
    nodes = 0

    def rec(v: int):
        nonlocal nodes
        if v == n:
            out.append(tuple(choice))
            return
        for i in c.live[v]:
            nodes += 1
            if nodes > cap:
                raise OracleCapExceeded(bound, cap)
            choice[v] = i
            if all(c.rho_x[e](choice[c.shape.src[e]]) == c.rho_y[e](choice[c.shape.tgt[e]]) for e in checks[v]):
                rec(v + 1)

    rec(0)
    return out


def compute_A(c: SolCoDecomp, cap: int | None = None) -> SolCoDecomp:
    """Reference A-bags: images of the limit's coordinate projections."""
    families = limit_sections(c, cap)
    return c.with_live([sorted({f[v] for f in families}) for v in range(c.shape.nv)])


def oracle_decide(F: ProblemFunctor, d: StructuredDecomposition) -> Verdict:
    """Glue the decomposition, then solve on the whole graph."""
    validate(d)
    sections = eval(F, colim(d).total)
    return Verdict(len(sections) > 0, count=len(sections))


# -- feedback vertex set branching ---------------------------------------


def fvs_decide(
    F: ProblemFunctor | None,
    d: StructuredDecomposition | None,
    S: Iterable[int],
    c: SolCoDecomp | None = None,
    cap: int | None = None,
) -> Verdict:
    """Branch over one section per FVS bag, then solve the remaining forest.

    For each choice ``σ`` (lexicographic) the FVS bags are pinned to ``{σ_s}``,
    every arc touching ``S`` is filtered once and then dropped, and the rest is
    handed to the tree solver. Stops at the first satisfiable choice.
    """
    if c is None:
        if F is None or d is None:
            raise ValueError("need either a co-decomposition or a functor and a decomposition")
        c = apply_sd(F, d)
    S = tuple(sorted(set(S)))
    if any(not 0 <= s < c.shape.nv for s in S):
        raise ShapeError(f"feedback vertex set {S} names vertices outside the shape")
    if not is_fvs(c.shape, S):
        raise ShapeError(f"{list(S)} is not a feedback vertex set of the shape")
    cap = oracle_cap() if cap is None else cap
    bound = 1
    for s in S:
        bound *= len(c.live[s])
    if bound > cap:
        raise OracleCapExceeded(bound, cap)

    in_s = set(S)
    touching = [e for e, (x, y) in enumerate(c.shape.arcs) if x in in_s or y in in_s]
    rest = [e for e in range(c.shape.ne) if e not in set(touching)]
    reduced = c.keep_arcs(rest)
    order = rooted_order(reduced.shape)
    passes = 0
    for sigma in itertools.product(*(c.live[s] for s in S)):
        live = list(c.live)
        for s, i in zip(S, sigma):
            live[s] = (i,)
        for e in touching:
            _filter_arc(c, e, live)
        witness = _tree_solve(reduced, live, order)
        passes += 1
        if witness is not None:
            assert is_matching_family(c, witness)
            return Verdict(True, witness, tuple(len(lv) for lv in live), passes=passes)
    return Verdict(False, None, tuple(0 for _ in c.live), passes=passes)


def decide(
    F: ProblemFunctor,
    d: StructuredDecomposition,
    S: Iterable[int] | None = None,
    cap: int | None = None,
) -> Verdict:
    validate(d)
    S = find_fvs(d.shape) if S is None else S
    return fvs_decide(F, d, S, cap=cap)


# -- gluing and the sheaf condition --------------------------------------


def glue_witness(c: SolCoDecomp, d: StructuredDecomposition, family: Sequence[int]) -> tuple[int, ...]:
    """Assemble a vertex map on ``colim(d)`` from one section per bag."""
    cl = colim(d)
    glued: list[int | None] = [None] * cl.total.nv
    for v, lam in enumerate(cl.cocone):
        section = c.bag_sets[v][family[v]]
        for i, g in enumerate(lam.vmap.table):
            if glued[g] is not None and glued[g] != section[i]:
                raise ValueError(f"sections disagree on glued vertex {g}")
            glued[g] = section[i]
    if any(g is None for g in glued):
        raise ValueError("colimit vertex not covered by any bag")
    return tuple(glued)


@dataclass(frozen=True)
class SheafCheck:
    n_families: int
    n_global: int
    injective: bool
    restrictions_match: bool

    @property
    def ok(self) -> bool:
        return self.n_families == self.n_global and self.injective and self.restrictions_match


def sheaf_check(F: ProblemFunctor, d: StructuredDecomposition, c: SolCoDecomp | None = None, cap: int | None = None) -> SheafCheck:
    """Compare matching families with global sections restricted along the cocone."""
    c = apply_sd(F, d) if c is None else c
    families = limit_sections(c, cap)
    cl = colim(d)
    global_sections = eval(F, cl.total)
    fam_set = set(families)
    restricted = set()
    matches = True
    for s in global_sections:
        fam = []
        for v, lam in enumerate(cl.cocone):
            i = c.bag_sets[v].get(precompose(s, lam))
            if i is None:
                matches = False
                break
            fam.append(i)
        else:
            fam = tuple(fam)
            matches &= fam in fam_set
            restricted.add(fam)
    injective = matches and len(restricted) == len(global_sections)
    return SheafCheck(len(families), len(global_sections), injective, matches)


def witness_is_valid(F: ProblemFunctor, d: StructuredDecomposition, c: SolCoDecomp, family: Sequence[int]) -> bool:
    try:
        glued = glue_witness(c, d, family)
    except ValueError:
        return False
    return is_section(F, colim(d).total, glued)
