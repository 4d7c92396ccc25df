"""Time the Hasse-Witt block of y^3 = prod (t - i), i <= 5, over a sweep of primes."""

import argparse

from divfrob.cli import bench
from divfrob.corpus import QUINTIC


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="101,211,401,809,1601")
    args = ap.parse_args()
    primes = [int(x) for x in args.primes.split(",")]
    prev = None
    for p, sec in bench(3, QUINTIC, primes):
        ratio = f"  x{sec / prev:.2f}" if prev else ""
        print(f"p = {p:>6}  {sec * 1e3:9.3f} ms{ratio}")
        prev = sec


if __name__ == "__main__":
    main()
