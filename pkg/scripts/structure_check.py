"""Cross-check the three routes to G_F of a simple polynomial.

For every simple type up to a given number of variables: the closed-form
quotient presentation, Smith normal form on the support, and (for small
cases) the brute-force oracle must give the same invariant factors.
"""

import argparse
import sys
import time
from collections import Counter

from hypersym.abelian import quotient_group
from hypersym.classify import enumerate_simple_types
from hypersym.diagact import predicted_group, simple_symmetry_group, symmetry_group
from hypersym.errors import BudgetExceeded
from hypersym.oracle import brute_force_symmetry_group
from hypersym.polyforms import simple_support


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--max-vars", type=int, default=7)
    parser.add_argument("--oracle-vars", type=int, default=3, help="brute force up to this many variables")
    args = parser.parse_args()

    tally = Counter()
    t0 = time.perf_counter()
    for d in args.degrees:
        for t in enumerate_simple_types(d, args.max_vars, exact=False):
            s = simple_support(d, t)
            closed = quotient_group(predicted_group(d, t))
            snf = symmetry_group(s).group
            built = simple_symmetry_group(d, t).group
            ok = closed == snf == built
            if ok and t.total <= args.oracle_vars:
                try:
                    ok = brute_force_symmetry_group(s, closed.exponent) == closed
                    tally["oracle"] += 1
                except BudgetExceeded:
                    tally["oracle skipped"] += 1
            tally["checked"] += 1
            if not ok:
                tally["mismatch"] += 1
                print(f"MISMATCH d={d} {t}: closed {closed}, snf {snf}, built {built}")
    print(", ".join(f"{k}: {v}" for k, v in sorted(tally.items())), f"[{time.perf_counter() - t0:.2f}s]")
    return 1 if tally["mismatch"] else 0


if __name__ == "__main__":
    sys.exit(main())
