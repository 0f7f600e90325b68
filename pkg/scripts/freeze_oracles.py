"""Recompute the brute-force reference values and write them to tests/fixtures.

Only the oracles in tests/oracles.py are used, never the library, so the
frozen file is an independent record the library is checked against.

    python scripts/freeze_oracles.py [--check]
"""

import argparse
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles as o  # noqa: E402

OUT = ROOT / "tests" / "fixtures" / "oracle_values.json"


def compute():
    vals = {}
    vals["stirling2"] = {f"{n},{m}": o.stirling2(n, m) for n in range(1, 9) for m in range(1, n + 1)}
    vals["rsurj_3_2"] = [list(x) for x in o.rsurj(3, 2)]
    vals["words_1_2_1"] = ["".join(f"{t}{i}" for t, i in w) for w in o.words(1, 2, 1)]
    n, cons = o.pair_constraints(5, 3)
    vals["lo_2_3_5_counterexample"] = list(o.arrow_holds(n, cons, 2, 1)[1])
    n, cons = o.pair_constraints(6, 3)
    vals["lo_2_3_6_holds"] = o.arrow_holds_dfs(n, cons, 2, 1)[0]
    dual = {}
    for c in range(3, 7):
        n, cons = o.dual_constraints(2, 3, c)
        dual[str(c)] = o.arrow_holds_dfs(n, cons, 2, 1)[0]
    vals["dual_2_3_k2_t1_holds"] = dual
    vals["dual_2_3_k2_t1_witness"] = min(int(c) for c, h in dual.items() if h)
    k2, k3 = o.sym({(0, 1)}), o.sym({(0, 1), (0, 2), (1, 2)})
    vals["emb_K2_K3"] = len(o.embeddings(2, k2, 3, k3))
    p3 = o.sym({(0, 1), (1, 2)})
    vals["aut_P3"] = len(o.embeddings(3, p3, 3, p3))
    return vals


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true", help="compare with the frozen file instead of writing")
    args = ap.parse_args()
    text = json.dumps(compute(), sort_keys=True, indent=2) + "\n"
    if args.check:
        same = OUT.read_text() == text
        print("frozen values reproduce" if same else "frozen values differ")
        return 0 if same else 1
    OUT.write_text(text)
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
