"""Command-line entry point.

Exit codes for ``decide``: 0 satisfiable, 1 unsatisfiable, 2 input or usage
error, 3 disagreement with the glue-then-solve oracle.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import bench, engine, selftest
from .decomp import colim, find_fvs
from .engine import OracleCapExceeded
from .generate import GEN_KINDS, GenConfig, generate
from .io import dump_instance, dumps, graph_to_json, load_instance
from .problems import KINDS, apply_sd

log = logging.getLogger("sheafdp")

EXIT_TOP, EXIT_BOTTOM, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2, 3
# ValueError covers the instance, decomposition, hom, shape and restriction errors
INPUT_ERRORS = (ValueError, OracleCapExceeded, OSError)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    return [int(t) for t in text.split(",")] if text else []


def cmd_decide(args) -> int:
    inst = load_instance(args.path)
    d = inst.decomposition
    if args.fvs is not None:
        S = tuple(_int_list(args.fvs))
    elif inst.fvs is not None:
        S = inst.fvs
    else:
        S = find_fvs(d.shape)
    t0 = time.perf_counter()
    c = apply_sd(inst.problem, d)
    verdict = engine.fvs_decide(None, None, S, c=c)
    elapsed = (time.perf_counter() - t0) * 1000.0
    bag_kappas = [len(b) for b in c.bag_sets]
    report = {
        "verdict": "top" if verdict.answer else "bottom",
        "kappa": max(bag_kappas, default=0),
        "bag_kappas": bag_kappas,
        "fvs": list(S),
        "fvs_size": len(S),
        "shape_arcs": d.shape.ne,
        "passes": verdict.passes,
        "time_ms": round(elapsed, 3),
    }
    if args.witness and verdict.answer:
        report["witness"] = {
            "family": list(verdict.witness),
            "section": list(engine.glue_witness(c, d, verdict.witness)),
        }
    code = EXIT_TOP if verdict.answer else EXIT_BOTTOM
    if args.oracle:
        oracle = engine.oracle_decide(inst.problem, d)
        agree = oracle.answer == verdict.answer
        report["oracle"] = {"verdict": "top" if oracle.answer else "bottom", "count": oracle.count, "agree": agree}
        if not agree:
            check = engine.sheaf_check(inst.problem, d, c)
            report["oracle"]["sheaf_condition"] = check.ok
            log.warning("decide and oracle disagree (sheaf condition %s)", "holds" if check.ok else "fails")
            code = EXIT_DISAGREE
    sys.stdout.write(dumps(report))
    return code


def cmd_colim(args) -> int:
    inst = load_instance(args.path)
    sys.stdout.write(dumps(graph_to_json(colim(inst.decomposition).total)))
    return 0


def cmd_filter(args) -> int:
    inst = load_instance(args.path)
    c = apply_sd(inst.problem, inst.decomposition)
    edges = _int_list(args.edges) if args.edges is not None else None
    out = engine.filter_all(c, args.order, edges)
    sys.stdout.write(
        dumps(
            {
                "order": args.order,
                "bag_sizes": [len(b) for b in out.bag_sets],
                "live_sizes": list(out.live_sizes()),
                "live": [list(lv) for lv in out.live],
            }
        )
    )
    return 0


def cmd_gen(args) -> int:
    cfg = GenConfig(
        kind=args.kind,
        bags=args.bags,
        width=args.width,
        fvs=args.fvs,
        seed=args.seed,
        edge_prob=args.edge_prob,
        problem=args.problem,
        target=args.target,
    )
    text = dump_instance(generate(cfg))
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    rows = bench.run_series(args.series, repeats=args.repeats)
    text = bench.to_csv(rows)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_selftest(args) -> int:
    return 0 if selftest.run(sys.stdout) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sheafdp", description="Decide H-coloring problems on structured decompositions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="run the decision pipeline on an instance file")
    d.add_argument("path")
    d.add_argument("--witness", action="store_true", help="include the glued global section")
    d.add_argument("--oracle", action="store_true", help="cross-check against glue-then-solve")
    d.add_argument("--fvs", help="comma-separated feedback vertex set (overrides the file)")
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("colim", help="print the glued graph")
    c.add_argument("path")
    c.set_defaults(func=cmd_colim)

    f = sub.add_parser("filter", help="run pullback filtering and print live subsets")
    f.add_argument("path")
    f.add_argument("--order", choices=engine.ORDERS, default="fixpoint")
    f.add_argument("--edges", help="comma-separated arc order for --order as-given")
    f.set_defaults(func=cmd_filter)

    g = sub.add_parser("gen", help="generate a seeded instance file")
    g.add_argument("--kind", choices=GEN_KINDS, default="tree")
    g.add_argument("--bags", type=int, default=4)
    g.add_argument("--width", type=int, default=4)
    g.add_argument("--fvs", type=int, default=0, help="extra non-tree arcs for --kind random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--edge-prob", type=float, default=0.5)
    g.add_argument("--problem", choices=KINDS, default="hcoloring")
    g.add_argument("--target", default="K3", help="K<n>, C<n> or P<n>")
    g.add_argument("--out", "-o", default="-")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time decide along one parameter series (CSV)")
    b.add_argument("--series", choices=bench.SERIES, default="edges")
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--out", "-o", default="-")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("selftest", help="run the golden examples end to end")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
