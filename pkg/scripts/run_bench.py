"""Run the three bench series, write CSVs and print the scaling fits.

    python3 scripts/run_bench.py --out results/ --repeats 5
"""

import argparse
from pathlib import Path

from sheafdp import bench


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="results")
    p.add_argument("--repeats", type=int, default=5)
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = {}
    for series in bench.SERIES:
        rows[series] = bench.run_series(series, repeats=args.repeats)
        (out / f"bench_{series}.csv").write_text(bench.to_csv(rows[series]))
        print(f"{series}:")
        for r in rows[series]:
            print(f"  param={r.param:<4} EG={r.EG:<4} kappa={r.kappa:<3} S={r.S} {r.time_ms:9.2f} ms  {r.verdict}")

    edges = rows["edges"]
    print(f"edges series linear fit R^2 = {bench.linear_r2([r.EG for r in edges], [r.time_ms for r in edges]):.4f}")
    kappa = rows["kappa"]
    # the bound allows kappa^(|S|+2) growth at fixed |EG|; these instances stay far below it
    for a, b in zip(kappa, kappa[1:]):
        print(f"kappa {a.kappa} -> {b.kappa}: time x{b.time_ms / a.time_ms:.2f}")
    print(f"fvs series ratio constant c = {bench.fvs_ratio_constant(rows['fvs']):.2f}")


if __name__ == "__main__":
    main()
