"""Problem functors and their lift to solution-space co-decompositions."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .decomp import StructuredDecomposition, validate
from .finset import FinFn, FinSet
from .graphcore import (
    Graph,
    GraphHom,
    SolutionSet,
    enumerate_homs,
    enumerate_refl_homs,
    is_mono,
    validate_hom,
)

KINDS = ("hcoloring", "refl_hcoloring")


class RestrictionError(ValueError):
    """Precomposition produced a vertex map that is not a section."""


@dataclass(frozen=True)
class ProblemFunctor:
    kind: str
    target: Graph

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "hcoloring" and not self.target.is_simple():
            raise ValueError("H-coloring needs a simple target graph")

    @classmethod
    def hcoloring(cls, target: Graph) -> "ProblemFunctor":
        return cls("hcoloring", target)

    @classmethod
    def refl_hcoloring(cls, target: Graph) -> "ProblemFunctor":
        return cls("refl_hcoloring", target)


def eval(F: ProblemFunctor, G: Graph) -> SolutionSet:  # noqa: A001
    if F.kind == "hcoloring":
        return enumerate_homs(G, F.target)
    return enumerate_refl_homs(G, F.target)


def is_section(F: ProblemFunctor, G: Graph, s: Sequence[int]) -> bool:
    """Direct membership test, without enumerating ``F(G)``."""
    harcs = set(F.target.arcs)
    if len(s) != G.nv or any(not 0 <= c < F.target.nv for c in s):
        return False
    if F.kind == "hcoloring":
        return all((s[a], s[b]) in harcs for a, b in G.arcs)
    garcs = set(G.arcs)
    return all(
        (x, y) in garcs
        for x in range(G.nv)
        for y in range(G.nv)
        if (s[x], s[y]) in harcs
    )


def precompose(section: Sequence[int], m: GraphHom) -> tuple[int, ...]:
    return tuple(section[v] for v in m.vmap.table)


def restrict(
    F: ProblemFunctor,
    m: GraphHom,
    over_b: SolutionSet | None = None,
    over_a: SolutionSet | None = None,
) -> FinFn:
    """Restriction ``F(B) -> F(A)`` along a mono ``m: A -> B`` (``s -> s ∘ m``).

    The image of every section is looked up in ``F(A)``; a miss means the
    functor is not functorial on this mono and raises :class:`RestrictionError`.
    """
    validate_hom(m)
    if not is_mono(m):
        raise ValueError("restriction is only defined along monomorphisms")
    over_b = eval(F, m.cod) if over_b is None else over_b
    over_a = eval(F, m.dom) if over_a is None else over_a
    table = []
    for s in over_b:
        r = precompose(s, m)
        i = over_a.get(r)
        if i is None:
            raise RestrictionError(f"restricting section {s} along the mono gives {r}, which is not a section")
        table.append(i)
    return FinFn(over_b.finset(), over_a.finset(), tuple(table))


@dataclass(frozen=True)
class SolCoDecomp:
    """Finite-set co-decomposition: per-bag section sets with live subsets.

    ``live[v]`` is a sorted tuple of indices into ``bag_sets[v]``; ``rho_x[e]``
    and ``rho_y[e]`` map the full bag sets of arc ``e``'s endpoints into
    ``adhesion_sets[e]``. Filtering only ever shrinks ``live``.
    """

    shape: Graph
    bag_sets: tuple[SolutionSet, ...]
    adhesion_sets: tuple[SolutionSet, ...]
    rho_x: tuple[FinFn, ...]
    rho_y: tuple[FinFn, ...]
    live: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for name in ("bag_sets", "adhesion_sets", "rho_x", "rho_y", "live"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "live", tuple(tuple(sorted(set(lv))) for lv in self.live))
        if not (len(self.bag_sets) == len(self.live) == self.shape.nv):
            raise ValueError("need one bag set and one live subset per shape vertex")
        if not (len(self.adhesion_sets) == len(self.rho_x) == len(self.rho_y) == self.shape.ne):
            raise ValueError("need one adhesion set and two restriction maps per shape arc")
        for v, lv in enumerate(self.live):
            if lv and not (0 <= lv[0] and lv[-1] < len(self.bag_sets[v])):
                raise ValueError(f"live subset of bag {v} is not contained in its section set")
        for e in range(self.shape.ne):
            x, y = self.shape.src[e], self.shape.tgt[e]
            if self.rho_x[e].dom.size != len(self.bag_sets[x]) or self.rho_y[e].dom.size != len(self.bag_sets[y]):
                raise ValueError(f"restriction maps of arc {e} are not total on the bag sets")
            if self.rho_x[e].cod.size != len(self.adhesion_sets[e]) or self.rho_y[e].cod.size != len(self.adhesion_sets[e]):
                raise ValueError(f"restriction maps of arc {e} do not land in the adhesion set")

    @classmethod
    def full(cls, shape, bag_sets, adhesion_sets, rho_x, rho_y) -> "SolCoDecomp":
        return cls(shape, bag_sets, adhesion_sets, rho_x, rho_y, [range(len(b)) for b in bag_sets])

    def arc(self, e: int) -> tuple[int, int]:
        return self.shape.src[e], self.shape.tgt[e]

    def with_live(self, live) -> "SolCoDecomp":
        return replace(self, live=tuple(live))

    def live_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self.live)

    def kappa(self) -> int:
        return max((len(b) for b in self.bag_sets), default=0)

    def keep_arcs(self, arcs: Sequence[int]) -> "SolCoDecomp":
        """Co-decomposition on the same vertices with only ``arcs`` (in that order)."""
        shape = Graph(self.shape.nv, [self.shape.src[e] for e in arcs], [self.shape.tgt[e] for e in arcs])
        return SolCoDecomp(
            shape,
            self.bag_sets,
            [self.adhesion_sets[e] for e in arcs],
            [self.rho_x[e] for e in arcs],
            [self.rho_y[e] for e in arcs],
            self.live,
        )


def codecomp_from_tables(
    shape: Graph,
    bag_sizes: Sequence[int],
    adhesion_sizes: Sequence[int],
    rho_x: Sequence[Sequence[int]],
    rho_y: Sequence[Sequence[int]],
    live: Sequence[Sequence[int]] | None = None,
) -> SolCoDecomp:
    """Abstract co-decomposition whose sections are just ``(i,)`` labels."""

    def labels(n):
        return SolutionSet(Graph(1), [(i,) for i in range(n)])

    bags = [labels(n) for n in bag_sizes]
    adh = [labels(n) for n in adhesion_sizes]
    rx = [FinFn(FinSet(len(t)), FinSet(adhesion_sizes[e]), tuple(t)) for e, t in enumerate(rho_x)]
    ry = [FinFn(FinSet(len(t)), FinSet(adhesion_sizes[e]), tuple(t)) for e, t in enumerate(rho_y)]
    if live is None:
        live = [range(n) for n in bag_sizes]
    return SolCoDecomp(shape, bags, adh, rx, ry, live)


def apply_sd(F: ProblemFunctor, d: StructuredDecomposition) -> SolCoDecomp:
    """Evaluate ``F`` on every bag and adhesion and restrict along both legs."""
    validate(d)
    bag_sets = [eval(F, b) for b in d.bags]
    adhesion_sets, rho_x, rho_y = [], [], []
    for e, span in enumerate(d.adhesions):
        x, y = d.arc(e)
        over_apex = eval(F, span.apex)
        adhesion_sets.append(over_apex)
        rho_x.append(restrict(F, span.leg_x, bag_sets[x], over_apex))
        rho_y.append(restrict(F, span.leg_y, bag_sets[y], over_apex))
    return SolCoDecomp.full(d.shape, bag_sets, adhesion_sets, rho_x, rho_y)
