"""Scaling series for the decision pipeline.

Each series sweeps one parameter of the running-time bound while holding the
others fixed, and times ``decide`` (solution spaces included) on it.
"""

from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from dataclasses import dataclass

from .decomp import AdhesionSpan, StructuredDecomposition
from .engine import decide
from .graphcore import Graph, complete, path
from .instances import cyclic_path_cover, inclusion
from .problems import ProblemFunctor
from .problems import eval as evaluate

SERIES = ("edges", "kappa", "fvs")
EDGE_SIZES = (50, 100, 200, 400, 800)
COLUMNS = ("param", "EG", "kappa", "S", "time_ms", "verdict")


@dataclass(frozen=True)
class BenchCase:
    param: int
    problem: ProblemFunctor
    decomposition: StructuredDecomposition
    fvs: tuple[int, ...]


@dataclass(frozen=True)
class BenchRow:
    param: int
    EG: int
    kappa: int
    S: int
    time_ms: float
    verdict: str


def path_cover(bags: int) -> StructuredDecomposition:
    """Path-shaped decomposition of a path: single-edge bags glued at shared ends."""
    bag, point = path(2), Graph(1)
    span = AdhesionSpan(point, inclusion(point, bag, [1]), inclusion(point, bag, [0]))
    shape = Graph(bags, list(range(bags - 1)), list(range(1, bags)))
    return StructuredDecomposition(shape, (bag,) * bags, (span,) * (bags - 1))


def disjoint_union(parts: list[StructuredDecomposition]) -> StructuredDecomposition:
    src, tgt, bags, spans = [], [], [], []
    off = 0
    for d in parts:
        src += [s + off for s in d.shape.src]
        tgt += [t + off for t in d.shape.tgt]
        bags += d.bags
        spans += d.adhesions
        off += d.shape.nv
    return StructuredDecomposition(Graph(off, src, tgt), tuple(bags), tuple(spans))


def edges_cases(sizes=EDGE_SIZES) -> list[BenchCase]:
    """Cyclic covers of ``C_n`` under 3-coloring: kappa 6, one FVS vertex."""
    F = ProblemFunctor.hcoloring(complete(3))
    return [BenchCase(n, F, cyclic_path_cover(n, 2), (0,)) for n in sizes]


def kappa_cases(colors=(2, 3, 4, 5, 6), bags: int = 100) -> list[BenchCase]:
    """Cyclic cover of ``C_100`` under q-coloring: kappa = q(q-1)."""
    d = cyclic_path_cover(bags, 2)
    return [BenchCase(q, ProblemFunctor.hcoloring(complete(q)), d, (0,)) for q in colors]


def fvs_cases(total_arcs: int = 120, sizes=(0, 1, 2)) -> list[BenchCase]:
    """2-coloring (kappa 2) with ``k`` disjoint odd cyclic covers.

    Every branch fails on the odd cycles, so all ``2**k`` choices are tried;
    ``k = 0`` is a path cover with the same arc count.
    """
    F = ProblemFunctor.hcoloring(complete(2))
    cases = []
    for k in sizes:
        if k == 0:
            cases.append(BenchCase(0, F, path_cover(total_arcs + 1), ()))
            continue
        length = total_arcs // k
        length += 1 - length % 2
        parts = [cyclic_path_cover(length, 2) for _ in range(k)]
        cases.append(BenchCase(k, F, disjoint_union(parts), tuple(i * length for i in range(k))))
    return cases


def cases_for(series: str) -> list[BenchCase]:
    if series == "edges":
        return edges_cases()
    if series == "kappa":
        return kappa_cases()
    if series == "fvs":
        return fvs_cases()
    raise ValueError(f"unknown series {series!r}; expected one of {SERIES}")


def time_case(case: BenchCase, repeats: int = 5) -> BenchRow:
    samples = []
    verdict = None
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeats):
            t0 = time.perf_counter()
            verdict = decide(case.problem, case.decomposition, case.fvs)
            samples.append((time.perf_counter() - t0) * 1000.0)
    finally:
        if gc_was_enabled:
            gc.enable()
    kappa = _kappa(case)
    return BenchRow(
        case.param,
        case.decomposition.shape.ne,
        kappa,
        len(case.fvs),
        statistics.median(samples),
        "top" if verdict.answer else "bottom",
    )


def _kappa(case: BenchCase) -> int:
    return max(len(evaluate(case.problem, b)) for b in set(case.decomposition.bags))


def run_series(series: str, repeats: int = 5) -> list[BenchRow]:
    return [time_case(c, repeats) for c in cases_for(series)]


def to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([r.param, r.EG, r.kappa, r.S, f"{r.time_ms:.3f}", r.verdict])
    return buf.getvalue()


def linear_r2(xs, ys) -> float:
    """Coefficient of determination of the least-squares line through the points."""
    return statistics.correlation(xs, ys) ** 2


def fvs_ratio_constant(rows: list[BenchRow]) -> float:
    """Smallest ``c`` with ``t(|S|+1) / t(|S|) <= c * kappa`` across consecutive rows."""
    rows = sorted(rows, key=lambda r: r.S)
    return max(b.time_ms / a.time_ms / b.kappa for a, b in zip(rows, rows[1:]))
