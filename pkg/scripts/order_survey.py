"""Survey maximal automorphism orders over a grid of degrees and dimensions.

For each (d, N) the divisibility-maximal orders are listed together with
the largest one and how many cases of the bound analysis hit it. With
``--witness`` every maximal order is also realized and verified.
"""

import argparse
import csv
import sys
import time

from hypersym.classify import order_report


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5, 6])
    parser.add_argument("--dims", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8])
    parser.add_argument("--witness", action="store_true", help="realize each maximal order explicitly")
    parser.add_argument("--csv", help="write rows to this CSV file")
    args = parser.parse_args()

    rows = []
    for d in args.degrees:
        for N in args.dims:
            t0 = time.perf_counter()
            rep = order_report(d, N, with_witnesses=args.witness)
            dt = time.perf_counter() - t0
            top = max(rep.maximal_orders)
            tags = sorted({c.case_tag for c in rep.provenance()[top]})
            missing = [m for m in rep.maximal_orders if args.witness and m not in rep.witnesses]
            rows.append({
                "d": d,
                "N": N,
                "n_maximal": len(rep.maximal_orders),
                "largest": top,
                "largest_from": "/".join(tags),
                "unrealized": " ".join(map(str, missing)),
                "seconds": f"{dt:.3f}",
                "maximal_orders": " ".join(map(str, rep.maximal_orders)),
            })
            print(f"d={d} N={N}: {len(rep.maximal_orders):3d} maximal, largest {top} ({'/'.join(tags)})"
                  + (f", unrealized {missing}" if missing else "") + f"  [{dt:.3f}s]")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
