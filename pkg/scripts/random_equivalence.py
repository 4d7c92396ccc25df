"""Compare the block formulas against the structural oracle on random curves."""

import argparse
import time

from divfrob.blocks import assemble
from divfrob.corpus import random_corpus
from divfrob.froblift import check_lift, frobenius_lift
from divfrob.oracle import structural_phi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--p-max", type=int, default=50)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--l-max", type=int, default=13)
    ap.add_argument("--extra-order", type=int, default=32, help="extra series terms for the truncation check")
    args = ap.parse_args()

    t0 = time.perf_counter()
    bad = 0
    for k, d in enumerate(random_corpus(args.seed, args.count, p_max=args.p_max, n_max=args.n_max, l_max=args.l_max)):
        lift = frobenius_lift(d)
        m = assemble(d, lift, check=False)
        o = structural_phi(d, lift)
        longer = structural_phi(d, lift, series_order=lift.dv + 1 + args.extra_order)
        ok = m == o == longer and check_lift(d, lift).ok and m.det() != 0
        bad += not ok
        print(f"{k:3d}  p={d.p:<3} n={d.n} l={d.l:<3} g={d.g:<3} dv={lift.dv:<4} {'ok' if ok else 'MISMATCH'}")
    print(f"{args.count - bad}/{args.count} agree in {time.perf_counter() - t0:.1f} s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
