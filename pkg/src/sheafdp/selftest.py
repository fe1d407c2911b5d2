"""Golden examples run end to end by ``sheafdp selftest``."""

from __future__ import annotations

from typing import Callable, TextIO

from .decomp import colim
from .engine import (
    compute_A,
    decide,
    filter_all,
    fvs_decide,
    limit_sections,
    oracle_decide,
    sheaf_check,
    tree_solve,
)
from .graphcore import complete, cycle, enumerate_homs
from .instances import EQUALITY_CHAIN_ORDER, cyclic_path_cover, equality_chain, two_paths_c5
from .problems import ProblemFunctor, apply_sd

K2 = ProblemFunctor.hcoloring(complete(2))
K3 = ProblemFunctor.hcoloring(complete(3))


def naive_lift(F: ProblemFunctor, d) -> bool:
    """Conjunction of per-bag and per-adhesion non-emptiness."""
    c = apply_sd(F, d)
    return all(len(b) > 0 for b in c.bag_sets) and all(len(a) > 0 for a in c.adhesion_sets)


def check_two_paths_not_2_colorable():
    d = two_paths_c5()
    assert naive_lift(K2, d) is True, "every piece should be 2-colorable on its own"
    assert decide(K2, d).answer is False
    assert naive_lift(K2, d) != decide(K2, d).answer


def check_two_paths_3_colorable():
    d = two_paths_c5()
    v = decide(K3, d)
    assert v.answer and v.witness is not None
    assert oracle_decide(K3, d).count == 30
    assert len(limit_sections(apply_sd(K3, d))) == 30


def check_two_paths_colimit():
    total = colim(two_paths_c5()).total
    assert (total.nv, total.ne) == (5, 10), (total.nv, total.ne)


def check_cyclic_cover_filter_stable():
    c = apply_sd(K2, cyclic_path_cover(5, 2))
    assert filter_all(c, "fixpoint").live_sizes() == (2, 2, 2, 2, 2)
    assert compute_A(c).live_sizes() == (0, 0, 0, 0, 0)
    assert fvs_decide(None, None, (0,), c=c).answer is False


def check_equality_chain_order():
    c = equality_chain()
    once = filter_all(c, "as-given", EQUALITY_CHAIN_ORDER)
    assert all(once.live_sizes()), once.live_sizes()
    assert tree_solve(c)[1].answer is False
    assert limit_sections(c) == []


def check_sheaf_count_c5_k3():
    check = sheaf_check(K3, two_paths_c5())
    assert check.ok and check.n_families == 30
    assert len(enumerate_homs(cycle(5), complete(3))) == 30
    assert len(enumerate_homs(cycle(5), complete(2))) == 0


CHECKS: list[tuple[str, Callable[[], None]]] = [
    ("two-path C5 cover, 2-coloring: decide bottom, naive lift top", check_two_paths_not_2_colorable),
    ("two-path C5 cover, 3-coloring: top with 30 global sections", check_two_paths_3_colorable),
    ("two-path C5 cover glues to 5 vertices / 10 arcs", check_two_paths_colimit),
    ("cyclic C5 cover, 2-coloring: filtering stable, branching bottom", check_cyclic_cover_filter_stable),
    ("equality chain: one as-given pass misses, tree solve catches", check_equality_chain_order),
    ("sheaf count C5 / K3 = 30", check_sheaf_count_c5_k3),
]


def run(out: TextIO) -> bool:
    ok = True
    for name, fn in CHECKS:
        try:
            fn()
        except AssertionError as exc:
            ok = False
            out.write(f"FAIL {name}: {exc}\n")
        else:
            out.write(f"PASS {name}\n")
    out.write(f"{'all checks passed' if ok else 'some checks failed'}\n")
    return ok
