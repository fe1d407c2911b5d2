"""How often does each problem kind pass the sheaf check on random covers,
and does decide still agree with glue-then-solve when it does not?

    python3 scripts/sheaf_survey.py --n 500 --max-extra 2
"""

import argparse
import random
from collections import Counter

from sheafdp.engine import decide, oracle_decide, sheaf_check
from sheafdp.generate import random_decomposition, random_shape
from sheafdp.graphcore import complete
from sheafdp.problems import KINDS, ProblemFunctor


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--max-nodes", type=int, default=8)
    p.add_argument("--max-extra", type=int, default=2)
    p.add_argument("--width", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = random.Random(args.seed)
    stats = {k: Counter() for k in KINDS}
    for _ in range(args.n):
        shape = random_shape(rng, rng.randint(1, args.max_nodes), rng.randint(0, args.max_extra))
        d = random_decomposition(rng, shape, args.width, fresh_max=1)
        target = complete(rng.randint(2, 4))
        for kind in KINDS:
            F = ProblemFunctor(kind, target)
            check = sheaf_check(F, d)
            agree = decide(F, d).answer == oracle_decide(F, d).answer
            s = stats[kind]
            s["n"] += 1
            s["sheaf"] += check.ok
            s["agree"] += agree
            s["more_families"] += check.n_families > check.n_global
            s["non_sheaf_agree"] += agree and not check.ok

    for kind, s in stats.items():
        print(
            f"{kind:15s} sheaf ok {s['sheaf']}/{s['n']}  decide==oracle {s['agree']}/{s['n']}  "
            f"families > global {s['more_families']}  agree despite failure {s['non_sheaf_agree']}"
        )


if __name__ == "__main__":
    main()
