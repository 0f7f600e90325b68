import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramseykit import relstruct as rs
from ramseykit.fraisse import (
    Age,
    StageTooLarge,
    UnsupportedAge,
    check_amalgam,
    check_extension_axioms,
    missing_demands,
    one_point_extension,
    saturate_stage,
    strong_amalgam,
)


def graph_extensions_realized(S, over, level):
    """Independent check for graphs: every neighbour pattern over every small X has a witness."""
    E = S.relation("E")
    for size in range(level + 1):
        for X in itertools.combinations(over, size):
            for pattern in itertools.product((False, True), repeat=size):
                if not any(
                    v not in X and all(((v, x) in E) == p for x, p in zip(X, pattern)) for v in range(S.size)
                ):
                    return False
    return True


def test_graph_stage_extension_axioms():
    stage = saturate_stage("graph", 2)
    over = stage.points_before(2)
    assert check_extension_axioms(stage, 2)
    assert graph_extensions_realized(stage.structure, over, 2)
    assert Age("graph").contains(rs.without_order(stage.structure))


def test_stage_sizes_are_stable():
    assert [saturate_stage(k, 2).size for k in ("graph", "tournament", "poset")] == [9, 8, 17]
    assert saturate_stage("graph", 2, seed_size=2).size == 20


def test_stage_json_and_meta():
    stage = saturate_stage("graph", 1)
    doc = stage.to_json()
    assert doc["stage_meta"]["rounds"] == 1 and doc["stage_meta"]["age"] == "graph"
    assert len(doc["stage_meta"]["created"]) == stage.size
    assert stage.points_before(1) == (0,)


def test_unsaturated_stage_reports_demands():
    stage = saturate_stage("graph", 1)
    # over every point, pairs are not yet served after one round
    assert missing_demands(stage, 2, over=range(stage.size))
    assert not check_extension_axioms(stage, 2, over=range(stage.size))
    assert check_extension_axioms(stage, 0)


@pytest.mark.parametrize("kind", ["digraph", "tournament", "poset"])
def test_other_ages_saturate(kind):
    stage = saturate_stage(kind, 2)
    assert Age(kind).contains(rs.without_order(stage.structure))
    assert check_extension_axioms(stage, 2)


def test_caps_and_unsupported():
    with pytest.raises(StageTooLarge) as exc:
        saturate_stage("digraph", 2, cap=20)
    assert exc.value.cap == 20
    with pytest.raises(UnsupportedAge):
        saturate_stage(Age("metric", (1, 2)), 1)
    with pytest.raises(UnsupportedAge):
        Age("hypergraph")


def test_age_membership():
    assert Age("graph").contains(rs.path_graph(3))
    assert not Age("tournament").contains(rs.path_graph(3))
    assert len(Age("tournament").members(3)) == 8
    assert len(Age("poset").members(3)) == 19


@pytest.mark.parametrize("kind", ["graph", "digraph", "tournament", "poset"])
def test_extension_functor_laws(kind):
    age = Age(kind)
    J = one_point_extension(age)
    members = [A for n in range(1, 4) for A in age.members(n, ordered=False)]
    for A in members:
        JA = J.apply(A)
        assert age.contains(JA)
        assert J.lift(rs.identity(A)) == rs.identity(JA)
        assert J.inclusion(A).map == tuple(range(A.size))
    for A, B in itertools.product(members[:12], repeat=2):
        for f in rs.enumerate_embeddings(A, B):
            Jf = J.lift(f)
            assert Jf.map[-1] == B.size
            for C in members[:12]:
                for g in rs.enumerate_embeddings(B, C):
                    assert J.lift(rs.compose_embeddings(g, f)) == rs.compose_embeddings(J.lift(g), Jf)


def test_metric_extension():
    age = Age("metric", (1, 2))
    J = one_point_extension(age)
    A = rs.Structure(age.signature, 2, {"D1": {(0, 1), (1, 0)}})
    assert age.contains(A) and age.contains(J.apply(A))


@pytest.mark.parametrize("kind", ["graph", "digraph", "tournament", "poset"])
def test_amalgams_exhaustive_small(kind):
    age = Age(kind)
    small = [A for n in range(1, 3) for A in age.members(n, ordered=False)]
    count = 0
    for A in small[:3]:
        for B in small:
            for C in small:
                for f in rs.enumerate_embeddings(A, B):
                    for g in rs.enumerate_embeddings(A, C):
                        assert check_amalgam(age, A, B, C, f, g)
                        count += 1
    assert count > 0


def test_amalgam_example():
    A = rs.graph(1)
    B = rs.complete_graph(2)
    C = rs.graph(2)
    D, f2, g2 = strong_amalgam("graph", A, B, C, rs.Embedding(A, B, (0,)), rs.Embedding(A, C, (0,)))
    assert D.size == 3 and D.relation("E") == frozenset({(0, 1), (1, 0)})
    assert g2.map == (0, 2)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_poset_amalgam_is_transitive(n, m, data):
    age = Age("poset")
    B = data.draw(st.sampled_from(age.members(n + 1, ordered=False)))
    C = data.draw(st.sampled_from(age.members(m + 1, ordered=False)))
    A = rs.induced_substructure(B, [0])
    for g in rs.enumerate_embeddings(A, C):
        D, _, _ = strong_amalgam(age, A, B, C, rs.Embedding(A, B, (0,)), g)
        assert age.contains(D)


def test_extension_examples():
    JK2 = one_point_extension("graph").apply(rs.complete_graph(2))
    assert JK2 == rs.graph(3, [(0, 1)])
    chain2 = rs.Structure(Age("poset").signature, 2, {"P": {(0, 1)}})
    chain3 = rs.Structure(Age("poset").signature, 3, {"P": {(0, 1), (0, 2), (1, 2)}})
    assert one_point_extension("poset").apply(chain2) == chain3
