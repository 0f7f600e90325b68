"""Built-in self-checks, one suite per module.

Each check returns ``(passed, detail)``; details hold counts only, never
timings, so reports are byte-stable across runs and worker counts.
"""

from __future__ import annotations

import functools
import itertools

from . import approx as ap
from . import arrowcheck as ac
from . import fraisse as fr
from . import paramwords as pw
from . import proofcolorings as pc
from . import quotients as qu
from . import relstruct as rs
from . import rigidsurj as rsj


@functools.lru_cache(maxsize=None)
def stirling2(n: int, m: int) -> int:
    if n == m:
        return 1
    if m == 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


def _graphs(max_n):
    return rs.graphs_up_to_iso(max_n)


# --- relstruct -------------------------------------------------------------------


def check_embedding_count_law(max_n=4):
    gs = _graphs(max_n)
    bad = 0
    pairs = 0
    for A, B in itertools.product(gs, repeat=2):
        embs = rs.enumerate_embeddings(A, B)
        if not embs:
            continue
        pairs += 1
        if len(embs) != len(rs.substructure_copies(A, B)) * len(rs.automorphisms(A)):
            bad += 1
    return bad == 0, {"pairs": pairs, "failures": bad}


def check_embeddings_valid(max_n=4):
    gs = _graphs(max_n)
    bad = 0
    total = 0
    for A, B in itertools.product(gs, repeat=2):
        embs = rs.enumerate_embeddings(A, B)
        total += len(embs)
        maps = [e.map for e in embs]
        if maps != sorted(set(maps)) or not all(rs.is_embedding(A, B, m) for m in maps):
            bad += 1
    return bad == 0, {"embeddings": total, "failures": bad}


def check_composition_laws(max_n=3):
    gs = _graphs(max_n)
    bad = 0
    triples = 0
    for A, B, C in itertools.product(gs, repeat=3):
        for f in rs.enumerate_embeddings(A, B):
            if rs.compose_embeddings(rs.identity(B), f) != f or rs.compose_embeddings(f, rs.identity(A)) != f:
                bad += 1
            for g in rs.enumerate_embeddings(B, C):
                for h in rs.automorphisms(C):
                    triples += 1
                    lhs = rs.compose_embeddings(h, rs.compose_embeddings(g, f))
                    rhs = rs.compose_embeddings(rs.compose_embeddings(h, g), f)
                    if lhs != rhs or not rs.is_embedding(A, C, lhs.map):
                        bad += 1
    return bad == 0, {"triples": triples, "failures": bad}


def check_ordered_embeddings_monotone(max_n=4):
    bad = 0
    for n in range(1, max_n):
        for A in rs.all_graphs(n, ordered=True):
            for B in rs.all_graphs(n + 1, ordered=True):
                for e in rs.enumerate_embeddings(A, B):
                    if list(e.map) != sorted(e.map):
                        bad += 1
    return bad == 0, {"failures": bad}


# --- rigidsurj -------------------------------------------------------------------


def check_stirling_counts(max_n=8):
    bad = [(n, m) for n in range(1, max_n + 1) for m in range(1, n + 1) if len(rsj.enumerate_rigid_surjections(n, m)) != stirling2(n, m)]
    return not bad, {"mismatches": [list(x) for x in bad]}


def check_phi_identity(r_max=2, s_max=3, n_max=7):
    bad = 0
    count = 0
    for s in range(1, s_max + 1):
        for r in range(1, min(r_max, s) + 1):
            fs = rsj.enumerate_rigid_surjections(s, r)
            for n in range(s + 1, n_max + 1):
                for u in rsj.enumerate_rigid_surjections(n, s + 1):
                    for f in fs:
                        count += 1
                        lhs = rsj.compose_rsurj(f, rsj.phi_restrict(u))
                        rhs = rsj.phi_restrict(rsj.compose_rsurj(rsj.extend_prime(f), u))
                        if lhs != rhs:
                            bad += 1
    return bad == 0, {"instances": count, "failures": bad}


def check_rsurj_composition(max_n=5):
    bad = 0
    count = 0
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            for g in rsj.enumerate_rigid_surjections(n, m):
                for l in range(1, m + 1):
                    for f in rsj.enumerate_rigid_surjections(m, l):
                        count += 1
                        h = rsj.compose_rsurj(f, g)
                        if rsj.rigidity_violation(h.values, l) is not None:
                            bad += 1
    return bad == 0, {"pairs": count, "failures": bad}


def check_canonical_pi_and_cut(max_n=6):
    bad = 0
    for m in range(1, max_n + 1):
        for n in range(m, max_n + 1):
            for p in range(n, max_n + 1):
                if rsj.compose_rsurj(rsj.canonical_pi(m, n), rsj.canonical_pi(n, p)) != rsj.canonical_pi(m, p):
                    bad += 1
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            for f in rsj.enumerate_rigid_surjections(n, m):
                if rsj.phi_restrict(rsj.extend_prime(f)) != f:
                    bad += 1
    return bad == 0, {"failures": bad}


# --- paramwords ------------------------------------------------------------------


def check_word_correspondence(k_max=2, n_max=5, m_max=3, p_max=2):
    bad = 0
    count = 0
    for k in range(0, k_max + 1):
        for m in range(0, m_max + 1):
            inner = {p: pw.enumerate_parameter_words(k, m, p) for p in range(0, min(p_max, m) + 1)} if m >= 1 else {}
            for n in range(max(1, m), n_max + 1):
                us = pw.enumerate_parameter_words(k, n, m)
                fus = [pw.to_rigid_surjection(u) for u in us]
                for vs in inner.values():
                    fvs = [pw.to_rigid_surjection(v) for v in vs]
                    for u, fu in zip(us, fus):
                        for v, fv in zip(vs, fvs):
                            count += 1
                            if pw.to_rigid_surjection(pw.substitute(u, v)) != rsj.compose_rsurj(fv, fu):
                                bad += 1
    return bad == 0, {"instances": count, "failures": bad}


def check_word_counts(max_n=7):
    bad = []
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            ws = pw.enumerate_parameter_words(0, n, m)
            images = {pw.to_rigid_surjection(w).values for w in ws}
            target = {f.values for f in rsj.enumerate_rigid_surjections(n, m)}
            if len(ws) != stirling2(n, m) or images != target:
                bad.append([n, m])
    return not bad, {"mismatches": bad}


def check_word_associativity(k_max=1, n_max=4):
    bad = 0
    count = 0
    for k in range(0, k_max + 1):
        for n in range(1, n_max + 1):
            for m in range(1, n + 1):
                for p in range(1, m + 1):
                    for q in range(0, p + 1):
                        for u in pw.enumerate_parameter_words(k, n, m):
                            for v in pw.enumerate_parameter_words(k, m, p):
                                uv = pw.substitute(u, v)
                                for w in pw.enumerate_parameter_words(k, p, q):
                                    count += 1
                                    if pw.substitute(uv, w) != pw.substitute(u, pw.substitute(v, w)):
                                        bad += 1
    return bad == 0, {"triples": count, "failures": bad}


def check_partial_full(k_max=2, n_max=4):
    bad = 0
    count = 0
    for k in range(0, k_max + 1):
        for n in range(1, n_max + 1):
            for m in range(1, n + 1):
                for p in range(0, m + 1):
                    vs = pw.enumerate_parameter_words(k, m, p)
                    for u in pw.enumerate_parameter_words(k, n, m):
                        for v in vs:
                            count += 1
                            if pw.partial_substitute(u, v) != pw.substitute(u, v):
                                bad += 1
    return bad == 0, {"instances": count, "failures": bad}


# --- quotients -------------------------------------------------------------------


def check_class_size_law(max_n=4):
    gs = _graphs(max_n)
    fam = qu.GroupFamily.full_automorphism()
    bad = 0
    pairs = 0
    for A, B in itertools.product(gs, repeat=2):
        if not rs.enumerate_embeddings(A, B):
            continue
        pairs += 1
        if not qu.class_size_law(A, B, fam):
            bad += 1
    return bad == 0, {"pairs": pairs, "failures": bad}


def check_partition(max_n=3):
    gs = _graphs(max_n)
    bad = 0
    for fam in (qu.GroupFamily.identity_only(), qu.GroupFamily.full_automorphism()):
        for A, B in itertools.product(gs, repeat=2):
            hom = rs.enumerate_embeddings(A, B)
            cls = qu.hom_classes(A, B, fam)
            members = [m.key for c in cls for m in c.members]
            if sorted(members) != sorted(f.key for f in hom) or len(set(members)) != len(members):
                bad += 1
            if any(c.representative != min(c.members, key=lambda m: m.key) for c in cls):
                bad += 1
    return bad == 0, {"failures": bad}


def check_action_laws(max_n=3):
    gs = _graphs(max_n)
    fam = qu.GroupFamily.full_automorphism()
    bad = 0
    for A, B, C in itertools.product(gs, repeat=3):
        classes = qu.hom_classes(A, B, fam)
        for w in rs.enumerate_embeddings(B, C):
            for c in classes:
                img = qu.act_left(w, c, fam)
                if any(qu.class_of(rs.compose_embeddings(w, m), fam) != img for m in c.members):
                    bad += 1
                for v in rs.automorphisms(C):
                    if qu.act_left(rs.compose_embeddings(v, w), c, fam) != qu.act_left(v, img, fam):
                        bad += 1
    for n in range(1, 4):
        for m in range(1, n + 1):
            if not qu.class_size_law(m, n, qu.GroupFamily.identity_only(), qu.DUAL):
                bad += 1
    return bad == 0, {"failures": bad}


# --- arrowcheck ------------------------------------------------------------------


def _lo_query(a, b, c, k, t):
    return ac.ArrowQuery("direct", rs.linear_order(a), rs.linear_order(b), rs.linear_order(c), k, t)


def check_ramsey_33(workers=1):
    hold = ac.check_arrow(_lo_query(2, 3, 6, 2, 1), workers=workers)
    fail = ac.check_arrow(_lo_query(2, 3, 5, 2, 1), workers=workers)
    naive6 = ac.check_arrow(_lo_query(2, 3, 6, 2, 1), method="naive")
    naive5 = ac.check_arrow(_lo_query(2, 3, 5, 2, 1), method="naive")
    chi = fail.counterexample
    ok = (
        hold.holds
        and not fail.holds
        and naive6.holds
        and not naive5.holds
        and chi is not None
        and naive5.counterexample.to_json() == chi.to_json()
        and ac.verify_lower_bound(chi, rs.linear_order(3), 2)
    )
    edges0 = sorted(c.representative.map for c in chi.domain if chi[c] == 0) if chi else []
    return ok, {"C5_color0_pairs": [list(e) for e in edges0], "nodes": [hold.stats["nodes"], fail.stats["nodes"]]}


def check_dual_witness(workers=1):
    skipped = []
    n = ac.search_witness(2, 3, 2, 1, category="dual", candidates=range(3, 7), skipped=skipped, workers=workers)
    return n == 6 and not skipped, {"witness": n, "skipped": len(skipped)}


def check_monotonicity():
    bad = 0
    L = rs.linear_order
    for c in range(3, 6):
        for k in (1, 2, 3):
            prev = False
            for t in (1, 2, 3):
                h = ac.check_arrow(_lo_query(2, 3, c, k, t)).holds
                if prev and not h:
                    bad += 1
                prev = h
            if k > 1 and ac.check_arrow(_lo_query(2, 3, c, k, 1)).holds and not ac.check_arrow(_lo_query(2, 3, c, k - 1, 1)).holds:
                bad += 1
    # enlarging C and shrinking B preserve a holding arrow
    if not ac.check_arrow(_lo_query(2, 3, 7, 2, 1)).holds:
        bad += 1
    if not ac.check_arrow(ac.ArrowQuery("direct", L(2), L(2), L(6), 2, 1)).holds:
        bad += 1
    return bad == 0, {"failures": bad}


def check_symmetry_reduction():
    bad = 0
    cases = [
        ac.ArrowQuery("direct", rs.graph(1), rs.graph(2), rs.path_graph(4), 2, 1),
        ac.ArrowQuery("direct", rs.graph(2, [(0, 1)]), rs.complete_graph(3), rs.complete_graph(5), 2, 1),
        ac.ArrowQuery("direct", rs.graph(1), rs.graph(2, [(0, 1)]), rs.complete_graph(4), 3, 1),
    ]
    for q in cases:
        plain = ac.check_arrow(q)
        sym = ac.check_arrow(q, symmetry=True)
        if plain.holds != sym.holds:
            bad += 1
        if plain.counterexample is not None:
            chi = plain.counterexample
            cat = qu.DIRECT
            for s in rs.automorphisms(q.C):
                moved = qu.Coloring(chi.domain, {c: chi.color_of_morphism(cat.compose(s, c.representative)) for c in chi.domain})
                if not ac.verify_lower_bound(moved, q.B, q.t + 1):
                    bad += 1
    return bad == 0, {"failures": bad}


# --- proofcolorings ----------------------------------------------------------------


def check_round_trip(max_n=3):
    gs = _graphs(max_n)
    fam = qu.GroupFamily.full_automorphism()
    out = {"instances": 0, "powerset_violations": 0, "factor_violations": 0}
    for A, B, C in itertools.product(gs, repeat=3):
        if not rs.enumerate_embeddings(A, B) or not rs.enumerate_embeddings(B, C):
            continue
        out["instances"] += 1
        for k in (1, 2):
            out["powerset_violations"] += pc.powerset_recount(A, B, C, fam, k)["violations"]
            out["factor_violations"] += pc.factor_recount(A, B, C, fam, k)["violations"]
    return out["powerset_violations"] == 0 and out["factor_violations"] == 0, out


def admissible_orbit_instances(max_c=5, subgroup_max_a=3):
    """(A, family, alpha, C) with alpha in Aut(A) outside G_A.

    The identity family is used for every A; proper cyclic subgroup families
    are added when |A| <= ``subgroup_max_a``.
    """
    gs = _graphs(max_c)
    for A in gs:
        auts = rs.automorphisms(A)
        if len(auts) < 2:
            continue
        fams = [qu.GroupFamily.identity_only()]
        for a in auts if A.size <= subgroup_max_a else ():
            H = pc._closure([a], qu.DIRECT, A)
            if 1 < len(H) < len(auts):
                fams.append(qu.GroupFamily.from_groups({A: [h.map for h in H]}))
        seen = set()
        for fam in fams:
            if fam in seen:
                continue
            seen.add(fam)
            G = {g.key for g in fam.group(A)}
            for alpha in auts:
                if alpha.key in G:
                    continue
                for C in gs:
                    if C.size >= A.size and rs.enumerate_embeddings(A, C):
                        yield A, fam, alpha, C


def check_orbit_colorings(max_c=5):
    bad = 0
    count = 0
    for A, fam, alpha, C in admissible_orbit_instances(max_c):
        count += 1
        if not pc.check_orbit_coloring(pc.orbit_two_coloring(A, C, fam, alpha)):
            bad += 1
    return bad == 0, {"instances": count, "failures": bad}


def check_constructive_colorings():
    bad = 0
    fam = qu.GroupFamily.full_automorphism()
    A, B, C = rs.graph(2, [(0, 1)]), rs.complete_graph(3), rs.complete_graph(4)
    classes = qu.hom_classes(A, C, fam)
    hom = rs.enumerate_embeddings(A, C)
    for bits in range(0, 1 << len(classes), 5):
        chi = qu.Coloring(classes, {c: bits >> i & 1 for i, c in enumerate(classes)})
        if not pc.check_quotient_coloring(chi, B) or not pc.check_factor_bound(chi, B, fam):
            bad += 1
    for bits in range(0, 1 << len(hom), 97):
        chi = qu.Coloring(hom, {f: bits >> i & 1 for i, f in enumerate(hom)})
        if not pc.check_powerset_implication(chi, B, fam):
            bad += 1
    return bad == 0, {"failures": bad}


# --- approx ----------------------------------------------------------------------


def check_schemes(workers=1):
    reports = [
        ap.verify_scheme(ap.scheme_linear_orders(), 4, 8, workers=workers),
        ap.verify_scheme(ap.scheme_dual_orders(), 3, 7, workers=workers),
        ap.verify_scheme(ap.scheme_enumerated(fr.saturate_stage("graph", 2, 2)), 3, workers=workers),
    ]
    detail = {r["scheme"]: {"instances": r["instances"], "failures": len(r["failures"])} for r in reports}
    return all(not r["failures"] for r in reports), detail


def check_lift_functoriality():
    schemes = [
        (ap.scheme_linear_orders(), 3),
        (ap.scheme_dual_orders(), 3),
        (ap.scheme_enumerated(fr.saturate_stage("graph", 1, 2)), 2),
        (ap.scheme_enumerated(fr.saturate_stage("tournament", 1, 2)), 2),
    ]
    bad = {s.name: len(ap.check_lift_functorial(s, n)) for s, n in schemes}
    return not any(bad.values()), {"failures": bad}


def check_star_agreement(n_max=6):
    D = ap.scheme_dual_orders()
    bad = 0
    count = 0
    for n in range(1, n_max + 1):
        for n2 in range(1, n + 1):
            for h in rsj.enumerate_rigid_surjections(n, n2):
                for s in range(1, n2):
                    for r in range(1, s + 1):
                        for f in rsj.enumerate_rigid_surjections(s, r):
                            count += 1
                            if D.star(h, f) != rsj.star_finite(h, f):
                                bad += 1
    L = ap.scheme_linear_orders()
    for b in range(1, 4):
        for a in range(1, b + 1):
            for f in rs.enumerate_embeddings(rs.linear_order(a), rs.linear_order(b)):
                if L.star(ap.shift_map(b + 1, 0), f) != f:
                    bad += 1
    return bad == 0, {"instances": count, "failures": bad}


# --- fraisse ---------------------------------------------------------------------


def check_stages():
    detail = {}
    ok = True
    for kind in fr.AGE_KINDS:
        st = fr.saturate_stage(kind, 2, 1)
        passed = st.age.contains(rs.without_order(st.structure)) and fr.check_extension_axioms(st, 2)
        detail[kind] = {"size": st.size, "passed": passed}
        ok = ok and passed
    g = fr.saturate_stage("graph", 2, 2)
    ok = ok and fr.check_extension_axioms(g, 2) and not fr.check_extension_axioms(fr.saturate_stage("graph", 0, 2), 1)
    detail["graph_seed2_size"] = g.size
    return ok, detail


def check_extension_functors(max_n=3):
    bad = 0
    for kind in fr.AGE_KINDS:
        age = fr.Age(kind)
        J = fr.one_point_extension(age)
        members = [A for n in range(1, max_n + 1) for A in age.members(n, ordered=False)]
        for A in members:
            JA = J.apply(A)
            if not age.contains(JA) or rs.induced_substructure(JA, range(A.size)) != A:
                bad += 1
            if J.lift(rs.identity(A)) != rs.identity(JA):
                bad += 1
        small = [A for A in members if A.size <= 2]
        for A, B, C in itertools.product(small + [m for m in members if m.size == 3], repeat=3):
            if not A.size <= B.size <= C.size:
                continue
            for f in rs.enumerate_embeddings(A, B):
                for g in rs.enumerate_embeddings(B, C):
                    if J.lift(rs.compose_embeddings(g, f)) != rs.compose_embeddings(J.lift(g), J.lift(f)):
                        bad += 1
    return bad == 0, {"failures": bad}


def check_amalgams(max_n=3):
    bad = 0
    count = 0
    for kind in fr.AGE_KINDS:
        age = fr.Age(kind)
        members = [A for n in range(1, max_n + 1) for A in age.members(n, ordered=False)]
        for A in [m for m in members if m.size <= 2]:
            for B in members:
                fs = rs.enumerate_embeddings(A, B)
                if not fs:
                    continue
                for C in members:
                    for g in rs.enumerate_embeddings(A, C):
                        for f in fs:
                            count += 1
                            if not fr.check_amalgam(age, A, B, C, f, g):
                                bad += 1
    return bad == 0, {"instances": count, "failures": bad}


SUITES = {
    "relstruct": [check_embedding_count_law, check_embeddings_valid, check_composition_laws, check_ordered_embeddings_monotone],
    "rigidsurj": [check_stirling_counts, check_phi_identity, check_rsurj_composition, check_canonical_pi_and_cut],
    "paramwords": [check_word_correspondence, check_word_counts, check_word_associativity, check_partial_full],
    "quotients": [check_class_size_law, check_partition, check_action_laws],
    "arrowcheck": [check_ramsey_33, check_dual_witness, check_monotonicity, check_symmetry_reduction],
    "proofcolorings": [check_round_trip, check_orbit_colorings, check_constructive_colorings],
    "approx": [check_schemes, check_lift_functoriality, check_star_agreement],
    "fraisse": [check_stages, check_extension_functors, check_amalgams],
}

_TAKES_WORKERS = {check_ramsey_33, check_dual_witness, check_schemes}


def run_suite(name: str, workers: int = 1) -> dict:
    if name == "all":
        reports = [run_suite(n, workers) for n in SUITES]
        return {"suite": "all", "passed": all(r["passed"] for r in reports), "suites": reports}
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    checks = []
    for fn in SUITES[name]:
        ok, detail = fn(workers=workers) if fn in _TAKES_WORKERS else fn()
        checks.append({"name": fn.__name__.removeprefix("check_"), "passed": bool(ok), "detail": detail})
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}
