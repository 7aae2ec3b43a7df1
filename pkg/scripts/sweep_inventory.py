#!/usr/bin/env python3
"""Print component-inventory totals over a (case, p, c0) grid.

A wider, flatter view than the CLI tables: one matrix per case with p down
the rows and c0 across the columns, each cell the assembled proper
intersection total (already cross-checked against its closed form).
"""

import argparse

from endolift.inventory import total_proper_intersection


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5,7,11", help="comma-separated odd primes")
    ap.add_argument("--max-c0", type=int, default=4)
    args = ap.parse_args()
    primes = [int(x) for x in args.primes.split(",")]
    c0s = list(range(args.max_c0 + 1))

    for label in ("unr", "ram"):
        print(f"case {label}: total proper intersection")
        header = "p\\c0 " + " ".join(f"{c0:>10}" for c0 in c0s)
        print(header)
        for p in primes:
            cells = [total_proper_intersection(label, p, c0) for c0 in c0s]
            print(f"{p:<5}" + " ".join(f"{v:>10}" for v in cells))
        print()


if __name__ == "__main__":
    main()
