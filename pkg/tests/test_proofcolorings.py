import itertools
import random

import pytest

from ramseykit import relstruct as rs
from ramseykit.proofcolorings import (
    check_factor_bound,
    check_orbit_coloring,
    check_powerset_implication,
    check_quotient_coloring,
    factor_coloring,
    factor_recount,
    min_colors_seen,
    orbit_two_coloring,
    powerset_coloring,
    powerset_recount,
    quotient_coloring,
)
from ramseykit.quotients import Coloring, GroupFamily, hom_classes
from ramseykit.selftest import admissible_orbit_instances

AUT = GroupFamily.full_automorphism()
K2, K3, K4 = (rs.complete_graph(n) for n in (2, 3, 4))


def random_class_coloring(A, C, k, rng):
    classes = hom_classes(A, C, AUT)
    return Coloring(classes, {c: rng.randrange(k) for c in classes})


def random_hom_coloring(A, C, k, rng):
    homs = rs.enumerate_embeddings(A, C)
    return Coloring(homs, {f: rng.randrange(k) for f in homs})


def test_quotient_coloring_shape():
    chi = random_class_coloring(K2, K4, 2, random.Random(1))
    chi2 = quotient_coloring(chi)
    assert len(chi2.domain) == 12
    for c in chi.domain:
        assert {chi2[m] for m in c.members} == {chi[c]}
    assert check_quotient_coloring(chi, K3)


def test_powerset_tokens():
    homs = rs.enumerate_embeddings(K2, K3)
    chi = Coloring(homs, {f: int(f.map[0] < f.map[1]) for f in homs})
    chi2 = powerset_coloring(chi, AUT)
    assert all(chi2[c] == frozenset({0, 1}) for c in chi2.domain)
    assert check_powerset_implication(chi, K3, AUT)


def test_factor_tokens_are_distinct_per_class():
    chi = random_class_coloring(K2, K4, 2, random.Random(2))
    xi = factor_coloring(chi, AUT)
    for c in chi.domain:
        toks = [xi[m] for m in c.members]
        assert len(set(toks)) == 2 and {t[0] for t in toks} == {chi[c]}
    assert check_factor_bound(chi, K3, AUT)
    assert min_colors_seen(xi, K3) >= 2 * min_colors_seen(chi, K3)


@pytest.mark.parametrize("seed", range(6))
def test_sampled_round_trips(seed):
    rng = random.Random(seed)
    graphs = [G for G in rs.graphs_up_to_iso(4)]
    for _ in range(8):
        A, B, C = sorted(rng.sample(graphs, 3), key=lambda G: G.size)
        if not rs.enumerate_embeddings(A, B) or not rs.enumerate_embeddings(B, C):
            continue
        k = rng.choice([1, 2])
        assert check_powerset_implication(random_hom_coloring(A, C, k, rng), B, AUT)
        chi = random_class_coloring(A, C, k, rng)
        assert check_quotient_coloring(chi, B)
        assert check_factor_bound(chi, B, AUT)


def test_recounts_small():
    r = powerset_recount(K2, K3, K4, AUT)
    assert r == {"checked": 24 * 2**12, "violations": 0}
    r = factor_recount(K2, K3, K4, AUT)
    assert r == {"checked": 2**6, "violations": 0}
    with pytest.raises(ValueError):
        powerset_recount(K2, K3, rs.complete_graph(6), AUT, cap=1 << 10)


def test_recounts_agree_with_direct_verifiers():
    # the vectorised recount and the per-coloring verifiers must see the same instances
    A, B, C = K2, rs.path_graph(3), rs.graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    classes = hom_classes(A, C, AUT)
    direct = 0
    for col in itertools.product(range(2), repeat=len(classes)):
        chi = Coloring(classes, dict(zip(classes, col)))
        assert check_factor_bound(chi, B, AUT)
        direct += 1
    assert factor_recount(A, B, C, AUT) == {"checked": direct, "violations": 0}
    homs = rs.enumerate_embeddings(A, rs.path_graph(3))
    assert all(
        check_powerset_implication(Coloring(homs, dict(zip(homs, col))), A, AUT)
        for col in itertools.product(range(2), repeat=len(homs))
    )


def test_orbit_coloring_example():
    alpha = rs.Embedding(K2, K2, (1, 0))
    chi = orbit_two_coloring(K2, K3, GroupFamily.identity_only(), alpha)
    assert chi.colors() == {0, 1}
    assert check_orbit_coloring(chi)
    with pytest.raises(ValueError):
        orbit_two_coloring(K2, K3, AUT, alpha)


def test_orbit_colorings_exhaustive_small():
    n = 0
    for A, fam, alpha, C in admissible_orbit_instances(max_c=4):
        assert check_orbit_coloring(orbit_two_coloring(A, C, fam, alpha))
        n += 1
    assert n > 50
