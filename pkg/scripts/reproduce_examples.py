"""Print the four example matrices in both orders, with Hasse-Witt determinants."""

import argparse

from divfrob.blocks import Order, assemble
from divfrob.corpus import example_curve
from divfrob.froblift import frobenius_lift
from divfrob.modring import det_mod_p

EXAMPLES = [(17, 3), (31, 3), (41, 3), (13, 4)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", choices=[o.value for o in Order], default="filtration")
    args = ap.parse_args()
    for p, n in EXAMPLES:
        d = example_curve(p, n)
        m = assemble(d, frobenius_lift(d), Order(args.order))
        print(f"p = {p}, n = {n}, l = {d.l}, g = {d.g}")
        width = len(str(p - 1))
        for row in m.tolist():
            print("  " + " ".join(f"{x:>{width}}" for x in row))
        hw = assemble(d, frobenius_lift(d)).quadrant("hw")
        print(f"  det(hasse-witt) = {det_mod_p(hw, p)}\n")


if __name__ == "__main__":
    main()
