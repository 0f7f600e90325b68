import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramseykit import relstruct as rs
from ramseykit.quotients import (
    DUAL,
    Coloring,
    GroupFamily,
    MissingGroup,
    act_left,
    class_of,
    class_size_law,
    hom_classes,
    image_colors,
)

ID = GroupFamily.identity_only()
AUT = GroupFamily.full_automorphism()
SMALL = rs.graphs_up_to_iso(3)


def test_class_examples():
    K2, K3 = rs.complete_graph(2), rs.complete_graph(3)
    assert len(hom_classes(K2, K3, AUT)) == 3
    assert len(hom_classes(K2, K3, ID)) == 6
    assert all(len(c) == 2 for c in hom_classes(K2, K3, AUT))
    assert [c.representative.map for c in hom_classes(K2, K3, AUT)] == [(0, 1), (0, 2), (1, 2)]


def test_dual_family_is_trivial():
    assert len(hom_classes(2, 4, AUT, DUAL)) == 7
    assert AUT.group(3, DUAL) == ID.group(3, DUAL)


def test_explicit_family():
    C4 = rs.graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    rot = [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2)]
    fam = GroupFamily.from_groups({C4: rot})
    assert len(fam.group(C4)) == 4
    assert class_size_law(C4, C4, fam)
    with pytest.raises(ValueError):
        GroupFamily.from_groups({C4: [(0, 1, 2, 3), (1, 2, 3, 0)]})
    with pytest.raises(MissingGroup):
        fam.group(rs.complete_graph(2))


@pytest.mark.parametrize("fam", [ID, AUT], ids=["id", "aut"])
def test_class_size_law_small(fam):
    for A, B in itertools.product(rs.graphs_up_to_iso(4), repeat=2):
        if A.size <= B.size:
            assert class_size_law(A, B, fam)


@pytest.mark.parametrize("A,B", [(A, B) for A in SMALL for B in rs.graphs_up_to_iso(4) if A.size <= B.size])
def test_classes_partition_hom(A, B):
    hom = {f.map for f in rs.enumerate_embeddings(A, B)}
    classes = hom_classes(A, B, AUT)
    seen = [m.map for c in classes for m in c.members]
    assert len(seen) == len(set(seen)) and set(seen) == hom
    for c in classes:
        assert c.representative.map == min(m.map for m in c.members)
        for m in c.members:
            assert class_of(m, AUT) == c


@given(st.sampled_from(SMALL), st.data())
def test_left_action_laws(A, data):
    B = data.draw(st.sampled_from([G for G in rs.graphs_up_to_iso(4) if G.size >= A.size]))
    classes = hom_classes(A, B, AUT)
    if not classes:
        return
    c = data.draw(st.sampled_from(classes))
    assert act_left(rs.identity(B), c, AUT) == c
    for a in rs.automorphisms(B):
        for b in rs.automorphisms(B):
            lhs = act_left(rs.compose_embeddings(a, b), c, AUT)
            assert lhs == act_left(a, act_left(b, c, AUT), AUT)
            # well defined: any member gives the same class
            for m in c.members:
                assert class_of(rs.compose_embeddings(a, m), AUT) == act_left(a, c, AUT)


def test_coloring_behaviour():
    K2, K3 = rs.complete_graph(2), rs.complete_graph(3)
    classes = hom_classes(K2, K3, AUT)
    chi = Coloring(classes, {c: i % 2 for i, c in enumerate(classes)})
    assert chi.colors() == {0, 1}
    f = classes[2].members[1]
    assert chi.color_of_morphism(f) == 0
    assert image_colors(chi, rs.identity(K3), rs.enumerate_embeddings(K2, K3)) == {0, 1}
    with pytest.raises(ValueError):
        Coloring(classes, {classes[0]: 1})
    renamed = Coloring(classes, {c: "xyz"[i] for i, c in enumerate(classes)}).normalized()
    assert [renamed[c] for c in classes] == [0, 1, 2]
    assert chi.to_json() == [[[0, 1], 0], [[0, 2], 1], [[1, 2], 0]]
