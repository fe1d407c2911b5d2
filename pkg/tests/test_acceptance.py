"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import random
import time

from conftest import ACCEPTANCE_LINES
from helpers import random_codecomp, random_forest, random_instance
from sheafdp import bench, selftest
from sheafdp.engine import (
    compute_A,
    decide,
    filter_all,
    fvs_decide,
    limit_sections,
    oracle_decide,
    sheaf_check,
    tree_solve,
)
from sheafdp.graphcore import complete
from sheafdp.instances import EQUALITY_CHAIN_ORDER, cyclic_path_cover, equality_chain, two_paths_c5
from sheafdp.problems import ProblemFunctor, apply_sd

K2 = ProblemFunctor.hcoloring(complete(2))


def record(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_1_two_path_cover_not_2_colorable():
    t0 = time.perf_counter()
    d = two_paths_c5()
    lifted = selftest.naive_lift(K2, d)
    verdict = decide(K2, d)
    elapsed = time.perf_counter() - t0
    ok = lifted and not verdict.answer and elapsed < 1.0
    assert record(1, ok, f"naive lift {'⊤' if lifted else '⊥'}, decide {verdict.symbol}, {elapsed:.3f} s")


def test_2_cyclic_cover_filtering_is_blind():
    t0 = time.perf_counter()
    c = apply_sd(K2, cyclic_path_cover(5, 2))
    sizes = filter_all(c, "fixpoint").live_sizes()
    verdict = fvs_decide(None, None, (0,), c=c)
    elapsed = time.perf_counter() - t0
    ok = sizes == (2, 2, 2, 2, 2) and not verdict.answer and elapsed < 1.0
    assert record(2, ok, f"fixpoint live sizes {sizes}, |S|=1 decide {verdict.symbol}, {elapsed:.3f} s")


def test_3_oracle_equivalence():
    n, skipped, skipped_agree, mismatches = 700, 0, 0, []
    t0 = time.perf_counter()
    for seed in range(n):
        F, d = random_instance(seed)
        agree = decide(F, d).answer == oracle_decide(F, d).answer
        if not sheaf_check(F, d, apply_sd(F, d)).ok:
            skipped += 1
            skipped_agree += agree
        elif not agree:
            mismatches.append(seed)
    elapsed = time.perf_counter() - t0
    checked = n - skipped
    ok = checked >= 500 and not mismatches and elapsed < 60.0
    detail = (
        f"{checked - len(mismatches)}/{checked} agree, {skipped} of {n} fail the sheaf check "
        f"(of those {skipped_agree} still agree), {elapsed:.1f} s"
    )
    assert record(3, ok, detail), mismatches[:10]


def test_4_sheaf_condition_on_trees():
    # ReflHColoring is not a sheaf on these covers, so only HColoring is held to it
    n, bad = 250, []
    for seed in range(n):
        F, d = random_instance(10_000 + seed, max_extra=0, kinds=("hcoloring",))
        check = sheaf_check(F, d)
        if not check.ok:
            bad.append((seed, check))
    refl_fail = sum(
        not sheaf_check(*random_instance(20_000 + s, max_extra=0, kinds=("refl_hcoloring",))).ok for s in range(100)
    )
    ok = not bad
    detail = f"{n - len(bad)}/{n} HColoring trees glue bijectively; refl not gated, fails on {refl_fail}/100"
    assert record(4, ok, detail), bad[:5]


def test_5_tree_solve_is_A():
    rng = random.Random(5)
    n, bad = 250, 0
    for _ in range(n):
        c = random_codecomp(rng, random_forest(rng, rng.randint(1, 10)), kappa=20, adhesion=(2, 8))
        out, _ = tree_solve(c)
        bad += out.live != compute_A(c).live
    assert record(5, bad == 0, f"{n - bad}/{n} forests, kappa <= 20")


def test_6_scaling_shape():
    edges = bench.run_series("edges", repeats=5)
    r2 = bench.linear_r2([r.EG for r in edges], [r.time_ms for r in edges])
    fvs = bench.run_series("fvs", repeats=5)
    c = bench.fvs_ratio_constant(fvs)
    ok = r2 >= 0.95 and c <= 4.0
    times = ", ".join(f"{r.EG}:{r.time_ms:.1f}" for r in edges)
    assert record(6, ok, f"edges R^2 = {r2:.4f} [{times} ms]; |S| ratio constant c = {c:.2f} (kappa 2)")


def test_7_naive_lift_counterexample():
    d = two_paths_c5()
    lifted, decided = selftest.naive_lift(K2, d), decide(K2, d).answer
    ok = lifted != decided
    try:
        selftest.check_two_paths_not_2_colorable()
    except AssertionError:
        ok = False
    assert record(7, ok, f"naive lift {lifted} != decide {decided}")


def test_8_equality_chain_order():
    c = equality_chain()
    once = filter_all(c, "as-given", EQUALITY_CHAIN_ORDER).live_sizes()
    _, verdict = tree_solve(c)
    families = limit_sections(c)
    ok = all(once) and not verdict.answer and not families
    assert record(8, ok, f"as-given (bc,ab,cd) sizes {once}, tree solve {verdict.symbol}, {len(families)} families")
