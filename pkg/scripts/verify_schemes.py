"""Run verify_scheme on the three built-in schemes and print a summary per scheme.

    python3 scripts/verify_schemes.py [--workers 4] [--full]
"""

import argparse
import json
import time

from ramseykit.approx import get_scheme, verify_scheme


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--full", action="store_true", help="also dump failing instances")
    args = ap.parse_args()

    runs = [
        ("linear", 4, 8, {}),
        ("dual-linear", 3, 7, {}),
        ("enumerated:graph", 3, None, {"rounds": 2, "seed_size": 2}),
        ("enumerated:tournament", 2, None, {"rounds": 2, "seed_size": 1}),
    ]
    for name, max_size, window, kw in runs:
        t0 = time.perf_counter()
        rep = verify_scheme(get_scheme(name, **kw), max_size, window, workers=args.workers)
        out = {k: v for k, v in rep.items() if k != "failures" or args.full}
        out["n_failures"] = len(rep["failures"])
        out["seconds"] = round(time.perf_counter() - t0, 2)
        print(json.dumps(out, sort_keys=True))


if __name__ == "__main__":
    main()
