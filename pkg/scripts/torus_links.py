#!/usr/bin/env python3
"""Component counts of pullbacks of cyclic covers.

For each pair (m, n), pull the n-fold cover of the k-cycle back along
the m-fold cyclic map and report the component count (always gcd(m, n)),
the degrees of the two projections, and whether the result is trivial.
"""

import argparse
import math

from covgraph.covers import is_trivial
from covgraph.pullback import pullback
from covgraph.zoo import cyclic_cover, cyclic_cover_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3, help="base cycle length")
    ap.add_argument("--max", type=int, default=6, help="largest m and n")
    args = ap.parse_args()
    k = args.k
    print(f"base C_{k}: pullback of the n-fold cover along the m-fold map")
    print(f"{'m':>3} {'n':>3} {'gcd':>4} {'components':>10} "
          f"{'deg base':>8} {'deg top':>8} {'trivial':>8}")
    for m in range(1, args.max + 1):
        for n in range(1, args.max + 1):
            f = cyclic_cover_map(m * k, k)
            p = cyclic_cover(n * k, k, prefix="z", edge_prefix="y")
            pb = pullback(f, p)
            g = math.gcd(m, n)
            trivial = is_trivial(pb.proj_base).trivial
            print(f"{m:>3} {n:>3} {g:>4} {pb.total.components.count:>10} "
                  f"{n // g:>8} {m // g:>8} {str(trivial):>8}")


if __name__ == "__main__":
    main()
