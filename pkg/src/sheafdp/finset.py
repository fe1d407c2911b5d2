"""Finite sets, finite functions, pullbacks and image factorizations.

Elements of a finite set of size ``n`` are the indices ``0..n-1``. Everything
here is immutable; downstream modules rely on the canonical orderings
(lexicographic pairs for pullbacks, first occurrence for images).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class FinSet:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"FinSet size must be non-negative, got {self.size}")

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))


@dataclass(frozen=True)
class FinFn:
    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.dom.size:
            raise ValueError(
                f"table has length {len(self.table)} but domain has size {self.dom.size}"
            )
        for i, j in enumerate(self.table):
            if not 0 <= j < self.cod.size:
                raise ValueError(f"table[{i}] = {j} out of range for codomain of size {self.cod.size}")

    @classmethod
    def of(cls, table: Sequence[int], cod: int) -> "FinFn":
        return cls(FinSet(len(table)), FinSet(cod), tuple(table))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size


def identity(n: int) -> FinFn:
    return FinFn.of(range(n), n)


def compose(f: FinFn, g: FinFn) -> FinFn:
    """Return ``g ∘ f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise ValueError(f"cannot compose: codomain {f.cod.size} != domain {g.dom.size}")
    return FinFn(f.dom, g.cod, tuple(g.table[j] for j in f.table))


@dataclass(frozen=True)
class Pullback:
    apex: FinSet
    pa: FinFn
    pb: FinFn

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.pa.table, self.pb.table))


def pullback(f: FinFn, g: FinFn) -> Pullback:
    """Pullback of the cospan ``A --f--> C <--g-- B``.

    The apex enumerates the pairs ``(a, b)`` with ``f(a) == g(b)`` in
    lexicographic order. Runs in time linear in ``|A| + |B| + |apex|``.
    """
    if f.cod != g.cod:
        raise ValueError(f"cospan codomains differ: {f.cod.size} != {g.cod.size}")
    fibres = defaultdict(list)
    for b, c in enumerate(g.table):
        fibres[c].append(b)
    left, right = [], []
    for a, c in enumerate(f.table):
        for b in fibres.get(c, ()):
            left.append(a)
            right.append(b)
    apex = FinSet(len(left))
    return Pullback(apex, FinFn(apex, f.dom, tuple(left)), FinFn(apex, g.dom, tuple(right)))


@dataclass(frozen=True)
class Image:
    img: FinSet
    incl: FinFn
    corestrict: FinFn

    @property
    def elements(self) -> tuple[int, ...]:
        return self.incl.table


def image(f: FinFn) -> Image:
    """Epi-mono factorization ``f = incl ∘ corestrict``, first-occurrence order."""
    position: dict[int, int] = {}
    for c in f.table:
        if c not in position:
            position[c] = len(position)
    img = FinSet(len(position))
    incl = FinFn(img, f.cod, tuple(position))
    corestrict = FinFn(f.dom, img, tuple(position[c] for c in f.table))
    return Image(img, incl, corestrict)


def restrict_to(f: FinFn, subset: Sequence[int]) -> FinFn:
    """Precompose ``f`` with the inclusion of ``subset`` (listed in order)."""
    return FinFn(FinSet(len(subset)), f.cod, tuple(f.table[i] for i in subset))
