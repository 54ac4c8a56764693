#!/usr/bin/env python3
"""Run the standard map corpus through the triad and tabulate verdicts.

Every row compares the algebraic side (component and fundamental-group
behavior of the map) with the categorical probes of its pullback functor
in the requested categories; an inconsistency in any row is a bug.
"""

import argparse
import sys
import time

from covgraph.covers import Category
from covgraph.functor import TriadBounds, triad
from covgraph.zoo import triad_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-sheets", type=int, default=3)
    ap.add_argument("--category", default="all",
                    choices=["cov", "scov", "bcov", "bscov", "all"])
    args = ap.parse_args()
    categories = tuple(Category) if args.category == "all" \
        else (Category(args.category),)
    bounds = TriadBounds(max_sheets=args.max_sheets)
    bad = 0
    t0 = time.time()
    print(f"{'map':30} {'pi0 s/i':>8} {'pi1 s/i':>8} "
          f"{'faithful':>9} {'full':>6} {'ess-surj':>9} {'ok':>4}")
    for name, f in triad_corpus():
        rep = triad(f, categories, bounds)
        v = rep.verdicts[0]
        fa = "yes" if v.faithful.witness is None else "no"
        fu = "yes" if v.full.witness is None else "no"
        es = "yes" if v.essentially_surjective.witness is None else "no"
        print(f"{name:30} "
              f"{str(rep.pi0_surjective)[0]}/{str(rep.pi0_injective)[0]:>4} "
              f"{str(rep.pi1_surjective)[0]}/{str(rep.pi1_injective)[0]:>4} "
              f"{fa:>9} {fu:>6} {es:>9} {str(rep.consistent):>4}")
        if not rep.consistent:
            bad += 1
    print(f"{len(triad_corpus())} maps, {len(categories)} categories, "
          f"{time.time() - t0:.1f}s, {bad} inconsistencies")
    return 2 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
