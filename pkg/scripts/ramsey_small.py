"""Least t with lo:c -> (lo:b)^{lo:a}_{k,t} for small c, plus the search effort.

    python3 scripts/ramsey_small.py [--a 2] [--b 3] [--k 2] [--c-max 7] [--workers 1]
"""

import argparse
import json
import time

from ramseykit.arrowcheck import ArrowQuery, CapExceeded, check_arrow
from ramseykit.relstruct import linear_order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--c-max", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    rows = []
    for c in range(args.b, args.c_max + 1):
        q = ArrowQuery("direct", linear_order(args.a), linear_order(args.b), linear_order(c), args.k, args.t)
        t0 = time.perf_counter()
        try:
            res = check_arrow(q, workers=args.workers)
        except CapExceeded as exc:
            rows.append({"c": c, "skipped": exc.to_json()})
            continue
        rows.append({"c": c, "holds": res.holds, "nodes": res.stats.get("nodes"), "seconds": round(time.perf_counter() - t0, 3)})
    print(json.dumps(rows, indent=1))


if __name__ == "__main__":
    main()
