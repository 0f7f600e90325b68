"""Command-line front end.  Every command prints one JSON document (sorted keys).

Exit codes: 0 success, 1 malformed JSON input, 2 structured error (invalid
input, cap exceeded), 3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys

from . import approx as ap
from . import arrowcheck as ac
from . import fraisse as fr
from . import paramwords as pw
from . import quotients as qu
from . import relstruct as rs
from . import rigidsurj as rsj
from . import selftest

EXIT_OK, EXIT_JSON, EXIT_ERROR, EXIT_SELFTEST = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    return json.loads(text)


_SHORTHAND = {
    "lo": rs.linear_order,
    "complete": rs.complete_graph,
    "edgeless": rs.graph,
    "path": rs.path_graph,
}


def parse_object(spec: str, category: str = "direct"):
    """Object from a shorthand (``lo:3``, ``complete:4``, ``graph:@g.json``), inline JSON, or an order size."""
    spec = spec.strip()
    if category == "dual":
        try:
            n = int(spec.removeprefix("lo:"))
        except ValueError:
            raise InputError(f"dual objects are order sizes, got {spec!r}") from None
        if n < 1:
            raise InputError("order sizes are positive")
        return n
    m = re.fullmatch(r"(\w+):(\d+)", spec)
    if m and m.group(1) in _SHORTHAND:
        return _SHORTHAND[m.group(1)](int(m.group(2)))
    if spec.startswith("graph:"):
        spec = spec[len("graph:"):]
    return rs.Structure.from_json(_load_json(spec))


def parse_candidates(spec: str, category: str):
    """``lo:3..8`` or ``3..8`` ranges, or a comma separated list of object specs."""
    m = re.fullmatch(r"(?:(\w+):)?(\d+)\.\.(\d+)", spec.strip())
    if m:
        kind = m.group(1) or "lo"
        lo, hi = int(m.group(2)), int(m.group(3))
        return [parse_object(f"{kind}:{n}", category) for n in range(lo, hi + 1)]
    return [parse_object(s, category) for s in spec.split(",") if s.strip()]


def parse_family(spec: str):
    if spec in ("id", "identity"):
        return qu.GroupFamily.identity_only()
    if spec in ("aut", "full"):
        return qu.GroupFamily.full_automorphism()
    raise InputError(f"unknown group family {spec!r} (use id or aut)")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# --- commands --------------------------------------------------------------------


def cmd_enumerate(args):
    query = {"kind": args.kind}
    if args.kind == "rsurj":
        query.update(n=args.n, m=args.m)
        items = [f.to_json() for f in rsj.enumerate_rigid_surjections(args.n, args.m)]
    elif args.kind == "words":
        query.update(k=args.k, n=args.n, m=args.m)
        items = [w.to_json() for w in pw.enumerate_parameter_words(args.k, args.n, args.m)]
    elif args.kind in ("embeddings", "classes", "copies"):
        A, B = parse_object(args.A), parse_object(args.B)
        query.update(A=A.to_json(), B=B.to_json())
        if args.kind == "embeddings":
            items = [e.to_json() for e in rs.enumerate_embeddings(A, B)]
        elif args.kind == "copies":
            items = [list(s) for s in rs.substructure_copies(A, B)]
        else:
            fam = parse_family(args.family)
            query["family"] = fam.to_json()
            items = [c.to_json() for c in qu.hom_classes(A, B, fam)]
    else:  # argparse restricts choices
        raise InputError(args.kind)
    return {"query": query, "count": len(items), "items": items}


def _arrow_kwargs(args):
    kw = {"workers": args.workers, "class_cap": args.cap_classes, "symmetry": args.symmetry, "method": args.method}
    if args.cap_colorings is not None:
        kw["naive_cap"] = args.cap_colorings
    return kw


def cmd_arrow(args):
    cat = args.category
    q = ac.ArrowQuery(cat, parse_object(args.A, cat), parse_object(args.B, cat), parse_object(args.C, cat), args.k, args.t, parse_family(args.family))
    return ac.check_arrow(q, **_arrow_kwargs(args)).to_json()


def cmd_min_t(args):
    cat = args.category
    A, B, C = (parse_object(x, cat) for x in (args.A, args.B, args.C))
    fam = parse_family(args.family)
    t = ac.min_threshold(A, B, C, args.k, fam, cat, **_arrow_kwargs(args))
    query = {"category": cat, "A": ac.object_to_json(A), "B": ac.object_to_json(B), "C": ac.object_to_json(C), "k": args.k, "family": fam.to_json()}
    return {"query": query, "min_t": t}


def cmd_witness(args):
    cat = args.category
    A, B = parse_object(args.A, cat), parse_object(args.B, cat)
    cands = parse_candidates(args.candidates, cat)
    fam = parse_family(args.family)
    skipped = []
    C = ac.search_witness(A, B, args.k, args.t, fam, cat, cands, skipped=skipped, **_arrow_kwargs(args))
    query = {
        "category": cat,
        "A": ac.object_to_json(A),
        "B": ac.object_to_json(B),
        "k": args.k,
        "t": args.t,
        "family": fam.to_json(),
        "candidates": [ac.object_to_json(c) for c in cands],
    }
    return {
        "query": query,
        "witness": None if C is None else ac.object_to_json(C),
        "skipped": [{"candidate": ac.object_to_json(c), "error": e.to_json()} for c, e in skipped],
    }


def _scheme_caps(args):
    if args.scheme in ("dual", "dual-linear"):
        return args.s_max or args.max_size or 3, args.n_max or args.window or 7
    if args.scheme == "linear":
        return args.max_size or 4, args.window or 8
    return args.max_size or 3, args.window


def cmd_verify_scheme(args):
    scheme = ap.get_scheme(args.scheme, rounds=args.rounds, seed_size=args.seed_size)
    max_size, window = _scheme_caps(args)
    report = ap.verify_scheme(scheme, max_size, window, workers=args.workers)
    report["query"] = {"scheme": args.scheme, "max_size": max_size, "window": window, "rounds": args.rounds, "seed_size": args.seed_size}
    return report


def _structure_arg(x):
    """A structure given inline as JSON or as a shorthand string like ``lo:2``."""
    if isinstance(x, str):
        return parse_object(x)
    if isinstance(x, dict):
        return rs.Structure.from_json(x)
    raise InputError(f"expected a structure (JSON object or shorthand), got {x!r}")


def cmd_star(args):
    h_raw, f_raw = _load_json(args.h), _load_json(args.f)
    query = {"scheme": args.scheme, "h": h_raw, "f": f_raw}
    if args.scheme in ("dual", "dual-linear"):
        h, f = rsj.RigidSurjection.from_json(h_raw), rsj.RigidSurjection.from_json(f_raw)
        out = ap.scheme_dual_orders().star(h, f)
        return {"query": query, "result": out.to_json()}
    if args.scheme == "linear":
        h = ap.OmegaEmbedding(rs.linear_order(len(h_raw)), h_raw)
        f = rs.Embedding(rs.linear_order(int(f_raw["dom"])), rs.linear_order(int(f_raw["cod"])), f_raw["map"])
        out = ap.scheme_linear_orders().star(h, f)
        return {"query": query, "result": {"dom": out.dom.size, "cod": out.cod.size, "map": list(out.map)}}
    if args.scheme.startswith("enumerated:"):
        scheme = ap.get_scheme(args.scheme, rounds=args.rounds, seed_size=args.seed_size)
        S = scheme.stage.structure
        h = rs.Embedding(rs.induced_substructure(S, range(len(h_raw))), S, h_raw)
        f = rs.Embedding(_structure_arg(f_raw["dom"]), _structure_arg(f_raw["cod"]), f_raw["map"])
        out = scheme.star(h, f)
        return {"query": query, "result": {"cod": out.cod.to_json(), "map": list(out.map)}}
    raise InputError(f"unknown scheme {args.scheme!r}")


def cmd_fraisse_stage(args):
    stage = fr.saturate_stage(fr.Age(args.age), args.rounds, args.seed_size, cap=args.cap)
    doc = stage.to_json()
    doc["query"] = {"age": args.age, "rounds": args.rounds, "seed_size": args.seed_size}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return doc


def cmd_selftest(args):
    report = selftest.run_suite(args.suite, workers=args.workers)
    report["query"] = {"suite": args.suite}
    return report


# --- parser ----------------------------------------------------------------------


def _add_search_flags(p, with_t=True):
    p.add_argument("--category", choices=["direct", "dual"], default="direct")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--k", type=int, required=True)
    if with_t:
        p.add_argument("--t", type=int, required=True)
    p.add_argument("--family", default="id")
    p.add_argument("--method", choices=["backtrack", "naive"], default="backtrack")
    p.add_argument("--symmetry", action="store_true", help="prune colorings related by automorphisms of C")
    p.add_argument("--cap-classes", type=int, default=ac.DEFAULT_CLASS_CAP)
    p.add_argument("--cap-colorings", type=int, default=None, help="naive enumeration cap (default: $RAMSEY_CAP_COLORINGS or 2^22)")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramseykit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list morphisms or parameter words")
    p.add_argument("kind", choices=["rsurj", "words", "embeddings", "classes", "copies"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int, default=0, help="alphabet size for words")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--family", default="id")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("arrow", help="decide C -> (B)^A_{k,t}")
    _add_search_flags(p)
    p.add_argument("--C", required=True)
    p.set_defaults(func=cmd_arrow)

    p = sub.add_parser("min-t", help="least t with C -> (B)^A_{k,t}")
    _add_search_flags(p, with_t=False)
    p.add_argument("--C", required=True)
    p.set_defaults(func=cmd_min_t)

    p = sub.add_parser("witness", help="first candidate C with C -> (B)^A_{k,t}")
    _add_search_flags(p)
    p.add_argument("--candidates", required=True, help="e.g. lo:3..8, 3..6 (dual) or a comma separated list")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify-scheme", help="check Phi_A(u . f') = Phi_B(u) . f exhaustively")
    p.add_argument("scheme", help="linear, dual-linear or enumerated:<age>")
    p.add_argument("--max-size", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--s-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--rounds", type=int, default=2)
    p.add_argument("--seed-size", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify_scheme)

    p = sub.add_parser("star", help="h * f for a scheme")
    p.add_argument("scheme")
    p.add_argument("--h", required=True, help="JSON: target list (linear, enumerated) or rigid surjection (dual)")
    p.add_argument("--f", required=True, help="JSON morphism")
    p.add_argument("--rounds", type=int, default=2)
    p.add_argument("--seed-size", type=int, default=2)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("fraisse-stage", help="build a saturated finite stage")
    p.add_argument("--age", choices=list(fr.AGE_KINDS), required=True)
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--seed-size", type=int, default=1)
    p.add_argument("--cap", type=int, default=fr.DEFAULT_STAGE_CAP)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fraisse_stage)

    p = sub.add_parser("selftest", help="run built-in invariant checks")
    p.add_argument("suite", nargs="?", default="all", choices=sorted(selftest.SUITES) + ["all"])
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except json.JSONDecodeError as exc:
        _emit({"error": "malformed_json", "message": exc.msg, "line": exc.lineno, "column": exc.colno})
        return EXIT_JSON
    except ac.CapExceeded as exc:
        _emit(exc.to_json())
        return EXIT_ERROR
    except (fr.StageTooLarge, ap.TruncationTooSmall) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc), "required": exc.required})
        return EXIT_ERROR
    except (ValueError, KeyError, TypeError, AttributeError, IndexError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_ERROR
    _emit(result)
    if args.command == "selftest" and not result["passed"]:
        return EXIT_SELFTEST
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
