import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ramseykit import relstruct as rs

K2 = rs.complete_graph(2)
K3 = rs.complete_graph(3)
P3 = rs.path_graph(3)


def edge_set(G):
    return G.relation("E")


@st.composite
def small_graphs(draw, max_n=4, ordered=False):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return rs.graph(n, chosen, ordered=ordered)


def test_embedding_examples(frozen):
    assert len(rs.enumerate_embeddings(K2, K3)) == frozen["emb_K2_K3"] == 6
    assert len(rs.enumerate_embeddings(rs.graph(1), rs.graph(5, [(0, 1), (2, 3)]))) == 5
    assert rs.enumerate_embeddings(K2, rs.graph(2)) == []


def test_signature_mismatch():
    with pytest.raises(rs.SignatureMismatch):
        rs.enumerate_embeddings(K2, rs.linear_order(3))


def test_induced_substructure_examples():
    assert rs.induced_substructure(K3, {0, 1}) == K2
    assert rs.induced_substructure(P3, {0, 2}) == rs.graph(2)
    assert rs.induced_substructure(P3, range(3)) == P3
    with pytest.raises(ValueError):
        rs.induced_substructure(P3, set())


def test_copies_and_automorphisms(frozen):
    assert rs.substructure_copies(K2, K3) == [(0, 1), (0, 2), (1, 2)]
    assert rs.substructure_copies(K3, P3) == []
    assert rs.substructure_copies(P3, P3) == [(0, 1, 2)]
    assert len(rs.automorphisms(K2)) == 2
    assert len(rs.automorphisms(rs.complete_graph(2, ordered=True))) == 1
    assert len(rs.automorphisms(P3)) == frozen["aut_P3"] == 2


def test_isomorphism_examples():
    relabeled = rs.graph(3, [(2, 0), (1, 2), (0, 1)])
    assert rs.is_isomorphic(K3, relabeled)
    assert not rs.is_isomorphic(K2, rs.graph(2))
    star = rs.graph(3, [(1, 0), (1, 2)])
    assert rs.is_isomorphic(P3, star)


def test_embedding_validation():
    with pytest.raises(ValueError):
        rs.Embedding(K2, P3, (0, 2))  # 0 and 2 are not adjacent
    with pytest.raises(ValueError):
        rs.Embedding(K2, K3, (1, 1))
    with pytest.raises(ValueError):
        rs.Embedding(rs.linear_order(2), rs.linear_order(3), (2, 0))


def test_json_round_trip():
    G = rs.graph(3, [(0, 1), (0, 2), (1, 2)], ordered=True)
    doc = G.to_json()
    assert doc == {
        "signature": [["E", 2]],
        "size": 3,
        "tuples": {"E": [[0, 1], [0, 2], [1, 0], [1, 2], [2, 0], [2, 1]]},
        "order": [0, 1, 2],
    }
    assert rs.Structure.from_json(doc) == G


@given(small_graphs(), small_graphs())
def test_embeddings_match_oracle(A, B):
    got = [e.map for e in rs.enumerate_embeddings(A, B)]
    assert got == oracles.embeddings(A.size, edge_set(A), B.size, edge_set(B))


@given(small_graphs(ordered=True), small_graphs(max_n=5, ordered=True))
def test_ordered_embeddings_match_oracle(A, B):
    got = [e.map for e in rs.enumerate_embeddings(A, B)]
    assert got == oracles.embeddings(A.size, edge_set(A), B.size, edge_set(B), ordered=True)
    assert all(list(m) == sorted(m) for m in got)


@given(small_graphs(), small_graphs())
def test_count_law(A, B):
    embs = rs.enumerate_embeddings(A, B)
    if embs:
        assert len(embs) == len(rs.substructure_copies(A, B)) * len(rs.automorphisms(A))


@given(small_graphs(max_n=3), small_graphs(max_n=3), small_graphs(max_n=3))
def test_composition_associative(A, B, C):
    for f in rs.enumerate_embeddings(A, B):
        assert rs.compose_embeddings(rs.identity(B), f) == f
        for g in rs.enumerate_embeddings(B, C):
            gf = rs.compose_embeddings(g, f)
            assert rs.is_embedding(A, C, gf.map)
            for h in rs.automorphisms(C):
                assert rs.compose_embeddings(h, gf) == rs.compose_embeddings(rs.compose_embeddings(h, g), f)


@given(small_graphs(), small_graphs())
def test_isomorphism_matches_bijection_search(A, B):
    brute = A.size == B.size and bool(oracles.embeddings(A.size, edge_set(A), B.size, edge_set(B)))
    assert rs.is_isomorphic(A, B) == brute


def test_automorphism_group_closed():
    for G in rs.graphs_up_to_iso(4):
        auts = rs.automorphisms(G)
        keys = {a.map for a in auts}
        assert tuple(range(G.size)) in keys
        assert all(rs.compose_embeddings(a, b).map in keys for a in auts for b in auts)


def test_graph_counts_up_to_iso():
    # 1, 2, 4, 11 graphs on 1..4 vertices
    sizes = [G.size for G in rs.graphs_up_to_iso(4)]
    assert [sizes.count(n) for n in range(1, 5)] == [1, 2, 4, 11]
