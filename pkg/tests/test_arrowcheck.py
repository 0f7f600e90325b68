import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ramseykit import relstruct as rs
from ramseykit.arrowcheck import (
    ArrowQuery,
    CapExceeded,
    SearchProblem,
    backtracking_search,
    build_problem,
    check_arrow,
    min_threshold,
    naive_search,
    search_witness,
    verify_lower_bound,
)
from ramseykit.quotients import Coloring, GroupFamily, hom_classes

LO = rs.linear_order


def lo_query(a, b, c, k=2, t=1):
    return ArrowQuery("direct", LO(a), LO(b), LO(c), k, t)


def test_pentagon_counterexample(frozen):
    res = check_arrow(lo_query(2, 3, 5))
    assert not res.holds
    col = [res.counterexample[c] for c in res.counterexample.domain]
    assert col == frozen["lo_2_3_5_counterexample"]
    assert verify_lower_bound(res.counterexample, LO(3), 2)
    # the color-0 pairs form a 5-cycle
    zero = [c.representative.map for c in res.counterexample.domain if res.counterexample[c] == 0]
    deg = {v: sum(v in e for e in zero) for v in range(5)}
    assert len(zero) == 5 and set(deg.values()) == {2}


def test_six_points_force_monochromatic_triangle(frozen):
    assert check_arrow(lo_query(2, 3, 6)).holds == frozen["lo_2_3_6_holds"]
    assert check_arrow(lo_query(2, 3, 6), method="naive").holds


def test_searches_agree_with_oracle_constraints():
    for c in range(3, 6):
        n, cons = oracles.pair_constraints(c, 3)
        _, problem = build_problem(lo_query(2, 3, c))
        assert problem.n_vars == n
        assert sorted(map(tuple, problem.constraints)) == sorted(tuple(sorted(x)) for x in cons)


@pytest.mark.parametrize("c", [3, 4, 5, 6])
def test_dual_constraints_match_oracle(c, frozen):
    n, cons = oracles.dual_constraints(2, 3, c)
    q = ArrowQuery("dual", 2, 3, c, 2, 1)
    _, problem = build_problem(q)
    assert problem.n_vars == n
    assert sorted(problem.constraints) == sorted(set(tuple(x) for x in cons))
    holds, _ = oracles.arrow_holds_dfs(n, cons, 2, 1)
    assert holds == frozen["dual_2_3_k2_t1_holds"][str(c)]
    assert check_arrow(q).holds == holds


def test_dual_witness(frozen):
    skipped = []
    got = search_witness(2, 3, 2, 1, category="dual", candidates=range(3, 7), skipped=skipped)
    assert got == frozen["dual_2_3_k2_t1_witness"] and skipped == []


@st.composite
def problems(draw):
    n = draw(st.integers(1, 7))
    k = draw(st.integers(1, 3))
    t = draw(st.integers(1, 2))
    cons = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True), max_size=6))
    return n, k, t, cons


@given(problems())
def test_backtracking_matches_product_scan(p):
    n, k, t, cons = p
    problem = SearchProblem.build(n, k, t, cons)
    want_holds, want_col = oracles.arrow_holds(n, cons, k, t)
    got, _ = backtracking_search(problem)
    naive, _ = naive_search(problem)
    assert (got is None) == want_holds == (naive is None)
    if got is not None:
        assert got == tuple(want_col) == naive
        assert problem.is_counterexample(got)


@given(problems())
def test_worker_count_does_not_change_result(p):
    n, k, t, cons = p
    problem = SearchProblem.build(n, k, t, cons)
    assert backtracking_search(problem, 1) == backtracking_search(problem, 3)


def test_symmetry_reduction_preserves_answer():
    for c in range(3, 7):
        for t in (1, 2):
            q = lo_query(2, 3, c, 2, t)
            assert check_arrow(q, symmetry=True).holds == check_arrow(q).holds
    K4 = rs.complete_graph(4)
    q = ArrowQuery("direct", rs.graph(1), rs.complete_graph(2), K4, 3, 1)
    plain, sym = check_arrow(q), check_arrow(q, symmetry=True)
    assert plain.holds == sym.holds
    assert sym.stats["nodes"] <= plain.stats["nodes"]


def test_monotone_in_t_and_k():
    A, B = LO(2), LO(3)
    for c in range(3, 7):
        prev = False
        for t in (1, 2):
            h = check_arrow(ArrowQuery("direct", A, B, LO(c), 2, t)).holds
            assert h or not prev
            prev = h
        assert check_arrow(ArrowQuery("direct", A, B, LO(c), 3, 1)).holds <= check_arrow(lo_query(2, 3, c)).holds


def test_min_threshold():
    assert min_threshold(LO(2), LO(3), LO(6), 2) == 1
    assert min_threshold(LO(2), LO(3), LO(5), 2) == 2
    assert min_threshold(2, 3, 6, 2, category="dual") == 1


def test_vacuous_and_validation():
    res = check_arrow(lo_query(2, 3, 4, k=2, t=2))
    assert res.holds and res.stats["vacuous"]
    with pytest.raises(ValueError):
        check_arrow(lo_query(3, 2, 4))
    with pytest.raises(ValueError):
        check_arrow(lo_query(2, 3, 4, k=0))


def test_caps():
    with pytest.raises(CapExceeded) as exc:
        check_arrow(lo_query(2, 3, 6), method="naive", naive_cap=100)
    assert exc.value.required == 2**15 and exc.value.to_json()["error"] == "cap_exceeded"
    with pytest.raises(CapExceeded):
        check_arrow(lo_query(2, 3, 10), class_cap=40)
    skipped = []
    got = search_witness(LO(2), LO(3), 2, 1, candidates=[LO(10), LO(6)], skipped=skipped)
    assert got == LO(6) and skipped[0][0] == LO(10)


def test_env_cap(monkeypatch):
    monkeypatch.setenv("RAMSEY_CAP_COLORINGS", "10")
    with pytest.raises(CapExceeded):
        check_arrow(lo_query(2, 3, 5), method="naive")


def test_verify_lower_bound_rejects_partial():
    K2, K3 = rs.complete_graph(2), rs.complete_graph(3)
    homs = rs.enumerate_embeddings(K2, K3)
    chi = Coloring(homs[:3], {f: 0 for f in homs[:3]})
    with pytest.raises(ValueError):
        verify_lower_bound(chi, K3, 1)


def test_result_json():
    res = check_arrow(lo_query(2, 3, 5))
    doc = res.to_json()
    assert doc["holds"] is False
    assert doc["query"]["C"]["size"] == 5
    assert len(doc["counterexample"]) == 10


def test_structural_arrow_on_graphs():
    # 2-colorings of edges of K_6 up to automorphisms of an edge
    q = ArrowQuery("direct", rs.complete_graph(2), rs.complete_graph(3), rs.complete_graph(6), 2, 1, GroupFamily.full_automorphism())
    assert check_arrow(q).holds
    q5 = ArrowQuery("direct", rs.complete_graph(2), rs.complete_graph(3), rs.complete_graph(5), 2, 1, GroupFamily.full_automorphism())
    res = check_arrow(q5)
    assert not res.holds and verify_lower_bound(res.counterexample, rs.complete_graph(3), 2)
    assert len(hom_classes(rs.complete_graph(2), rs.complete_graph(5), GroupFamily.full_automorphism())) == 10
