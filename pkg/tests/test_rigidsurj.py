import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ramseykit.rigidsurj import (
    RigidSurjection,
    canonical_pi,
    compose_rsurj,
    enumerate_rigid_surjections,
    extend_prime,
    identity_rsurj,
    phi_restrict,
    rigidity_violation,
    star_finite,
)


@st.composite
def rsurjs(draw, max_n=7, min_m=1):
    n = draw(st.integers(min_m, max_n))
    m = draw(st.integers(min_m, n))
    fs = enumerate_rigid_surjections(n, m)
    return draw(st.sampled_from(fs))


def values(fs):
    return [f.values for f in fs]


def test_enumeration_examples(frozen):
    assert [list(v) for v in values(enumerate_rigid_surjections(3, 2))] == frozen["rsurj_3_2"]
    assert values(enumerate_rigid_surjections(5, 1)) == [(0,) * 5]
    assert len(enumerate_rigid_surjections(4, 2)) == 7
    with pytest.raises(ValueError):
        enumerate_rigid_surjections(2, 3)


@pytest.mark.parametrize("n", range(1, 9))
def test_counts_are_stirling(n, frozen):
    for m in range(1, n + 1):
        assert len(enumerate_rigid_surjections(n, m)) == oracles.stirling2(n, m) == frozen["stirling2"][f"{n},{m}"]


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_filter(n):
    for m in range(1, n + 1):
        assert values(enumerate_rigid_surjections(n, m)) == oracles.rsurj(n, m)


def test_validation():
    with pytest.raises(ValueError):
        RigidSurjection.of([1, 0])
    with pytest.raises(ValueError):
        RigidSurjection(3, 3, (0, 1, 1))
    assert rigidity_violation((0, 2, 1), 3) is not None


def test_compose_examples():
    f = RigidSurjection.of([0, 1, 0])
    g = RigidSurjection.of([0, 1, 2, 1])
    assert compose_rsurj(f, g).values == (0, 1, 0, 1)
    assert compose_rsurj(identity_rsurj(3), g) == g
    with pytest.raises(ValueError):
        compose_rsurj(g, f)


def test_canonical_pi_examples():
    assert canonical_pi(3, 5).values == (0, 1, 2, 2, 2)
    assert canonical_pi(4, 4) == identity_rsurj(4)
    assert canonical_pi(1, 4).values == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        canonical_pi(4, 3)


def test_extend_prime_examples():
    assert extend_prime(RigidSurjection.of([0, 1, 0])).values == (0, 1, 0, 2)
    assert extend_prime(identity_rsurj(1)) == identity_rsurj(2)
    assert extend_prime(RigidSurjection.of([0, 0])).values == (0, 0, 1)


def test_phi_restrict_examples():
    assert phi_restrict(RigidSurjection.of([0, 1, 0, 2, 1])) == RigidSurjection(3, 2, (0, 1, 0))
    assert phi_restrict(RigidSurjection.of([0, 1])) == RigidSurjection(1, 1, (0,))
    assert phi_restrict(RigidSurjection.of([0, 0, 1])) == RigidSurjection(2, 1, (0, 0))
    with pytest.raises(ValueError):
        phi_restrict(RigidSurjection.of([0, 0]))


def test_star_finite_examples():
    f = RigidSurjection.of([0, 0])
    assert star_finite(RigidSurjection.of([0, 1, 2, 1, 3]), f).values == (0, 0)
    g = RigidSurjection.of([0, 1, 0])
    assert star_finite(identity_rsurj(4), g) == g
    with pytest.raises(ValueError):
        star_finite(identity_rsurj(3), g)


@given(rsurjs(max_n=5), rsurjs(max_n=5))
def test_composition_matches_oracle(f, g):
    if g.cod_size != f.dom_size:
        return
    h = compose_rsurj(f, g)
    assert h.values == oracles.compose(f.values, g.values)
    assert rigidity_violation(h.values, f.cod_size) is None


@given(rsurjs(max_n=4), st.data())
def test_composition_associative(h, data):
    g = data.draw(st.sampled_from(enumerate_rigid_surjections(h.cod_size, data.draw(st.integers(1, h.cod_size)))))
    f = data.draw(st.sampled_from(enumerate_rigid_surjections(g.cod_size, data.draw(st.integers(1, g.cod_size)))))
    assert compose_rsurj(f, compose_rsurj(g, h)) == compose_rsurj(compose_rsurj(f, g), h)


@given(st.integers(1, 6), st.data())
def test_canonical_pi_composes(m, data):
    n = data.draw(st.integers(m, 7))
    p = data.draw(st.integers(n, 8))
    assert compose_rsurj(canonical_pi(m, n), canonical_pi(n, p)) == canonical_pi(m, p)


@given(rsurjs())
def test_cut_after_extend_is_identity(f):
    assert phi_restrict(extend_prime(f)) == f


@given(rsurjs(max_n=7, min_m=2), st.data())
def test_phi_identity_against_oracle(u, data):
    s = u.cod_size - 1
    r = data.draw(st.integers(1, s))
    f = data.draw(st.sampled_from(enumerate_rigid_surjections(s, r)))
    lhs = compose_rsurj(f, phi_restrict(u))
    assert lhs == phi_restrict(compose_rsurj(extend_prime(f), u))
    assert lhs.values == oracles.compose(f.values, oracles.phi(u.values))


@given(rsurjs(max_n=6), st.data())
def test_star_finite_always_valid(h, data):
    if h.cod_size < 2:
        return
    s = data.draw(st.integers(1, h.cod_size - 1))
    r = data.draw(st.integers(1, s))
    f = data.draw(st.sampled_from(enumerate_rigid_surjections(s, r)))
    out = star_finite(h, f)
    assert rigidity_violation(out.values, out.cod_size) is None
    assert out.cod_size == r


def test_json_round_trip():
    f = RigidSurjection.of([0, 1, 0, 2, 1])
    assert f.to_json() == {"dom": 5, "cod": 3, "values": [0, 1, 0, 2, 1]}
    assert RigidSurjection.from_json(f.to_json()) == f
    assert RigidSurjection.from_json([0, 1, 0, 2, 1]) == f
