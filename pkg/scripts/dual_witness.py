"""Smallest n with n -> (b)^a_{k,t} among rigid surjections, searched upward.

    python3 scripts/dual_witness.py [--a 2] [--b 3] [--k 2] [--t 1] [--n-max 6]
"""

import argparse
import json

from ramseykit.arrowcheck import ArrowQuery, check_arrow


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    trace = []
    witness = None
    for n in range(args.b, args.n_max + 1):
        res = check_arrow(ArrowQuery("dual", args.a, args.b, n, args.k, args.t), workers=args.workers)
        trace.append({"n": n, "holds": res.holds, "classes": res.stats["classes"], "nodes": res.stats.get("nodes")})
        if res.holds:
            witness = n
            break
    print(json.dumps({"witness": witness, "trace": trace}, indent=1))


if __name__ == "__main__":
    main()
