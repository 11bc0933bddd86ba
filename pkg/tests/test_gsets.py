import itertools

import pytest

from profmackey.errors import CompositionMismatch, GroupMismatch, InvalidAction, NotSubgroup
from profmackey.finite_group import builtin
from profmackey.gsets import (GSet, Span, fixed_count, gset_product, hom_basis, identity_span, orbit_decompose,
                              pullback_orbits, span_compose, transitive_span)


def cls(G, i):
    return G.lattice().class_of[i]


def test_orbit_decompose_basic(s3):
    assert orbit_decompose(s3, [[] for _ in range(s3.n)]) == GSet.empty(s3)
    regular = [[s3.table[g][x] for x in range(s3.n)] for g in range(s3.n)]
    assert orbit_decompose(s3, regular) == GSet.orbit(s3, 0)


def test_orbit_decompose_natural_action(s3):
    # S3 on {1,2,3}, using the permutation labels
    from profmackey.finite_group import parse_cycles
    perms = [parse_cycles(lab, 3) for lab in s3.labels]
    action = [list(p) for p in perms]
    X = orbit_decompose(s3, action)
    assert X.size == 3
    assert X.counts[cls(s3, 1)] == 1 and sum(X.counts) == 1


def test_orbit_decompose_rejects_non_actions(s3):
    with pytest.raises(InvalidAction):
        orbit_decompose(s3, [[0]] * 5)
    with pytest.raises(InvalidAction):
        orbit_decompose(s3, [[1, 0]] * 6)
    bad = [[0, 1]] * 6
    bad[1] = [1, 0]
    bad[2] = [1, 0]
    bad[3] = [1, 0]
    with pytest.raises(InvalidAction):
        orbit_decompose(s3, bad)


def test_products(s3, c4):
    lat = c4.lattice()
    X = GSet.orbit(c4, 1)
    assert gset_product(X, X) == GSet.orbit(c4, 1, 2)
    Y = GSet.orbit(s3, 4)
    assert gset_product(Y, Y) == GSet.orbit(s3, 4, 2)
    top = GSet.orbit(s3, 5)
    Z = GSet.orbit(s3, 0) + GSet.orbit(s3, 2)
    assert gset_product(top, Z) == Z
    assert lat[1].order == 2


def test_product_size_oracle():
    for name in ["C4", "S3", "C2xC2", "C6"]:
        G = builtin(name)
        lat = G.lattice()
        for a, b in itertools.product(lat.reps, repeat=2):
            X, Y = GSet.orbit(G, a), GSet.orbit(G, b)
            assert gset_product(X, Y).size == X.size * Y.size


def test_product_group_mismatch(s3, c4):
    with pytest.raises(GroupMismatch):
        gset_product(GSet.orbit(s3, 0), GSet.orbit(c4, 0))


def _pair_count(G, H, K, J):
    # pairs (g1 H, g2 K) with g1 J = g2 J
    t = G.table
    cos = lambda g, S: frozenset(t[g][s] for s in S.members)
    pairs = {(cos(a, H), cos(b, K)) for a in range(G.n) for b in range(G.n) if cos(a, J) == cos(b, J)}
    return len(pairs)


def test_pullbacks(s3, c4):
    lat = s3.lattice()
    H = lat[2]
    P = pullback_orbits(s3, H, H, s3.full())
    assert P == GSet.orbit(s3, 2) + GSet.orbit(s3, 0)
    assert P.size == 9 == _pair_count(s3, H, H, s3.full())
    C2 = c4.lattice()[1]
    P = pullback_orbits(c4, C2, C2, c4.full())
    assert P == GSet.orbit(c4, 1, 2) and P.size == 4
    assert pullback_orbits(s3, s3.full(), s3.full(), s3.full()) == GSet.orbit(s3, 5)
    with pytest.raises(NotSubgroup):
        pullback_orbits(s3, lat[1], lat[4], lat[4])


def test_pullback_size_oracle():
    G = builtin("S3")
    lat = G.lattice()
    for j in range(len(lat)):
        for h in lat.below(j):
            for k in lat.below(j):
                P = pullback_orbits(G, lat[h], lat[k], lat[j])
                assert P.size == _pair_count(G, lat[h], lat[k], lat[j])


def test_fixed_counts(s3):
    lat = s3.lattice()
    for k in range(len(lat)):
        assert fixed_count(GSet.orbit(s3, 5), lat[k]) == 1
    assert fixed_count(GSet.orbit(s3, 0), s3.trivial()) == 6
    assert fixed_count(GSet.orbit(s3, 4), lat[4]) == 2
    assert fixed_count(GSet.orbit(s3, 1), lat[2]) == 1
    assert fixed_count(GSet.orbit(s3, 1), lat[4]) == 0


def test_span_composition_example(s3):
    lat = s3.lattice()
    e = s3.identity
    s1 = transitive_span(s3, 2, 2, e, 5, e)
    s2 = transitive_span(s3, 5, 2, e, 2, e)
    comp = span_compose(s2, s1)
    assert comp.apex_gset() == GSet.orbit(s3, 2) + GSet.orbit(s3, 0)
    assert lat[2].order == 2


def test_identity_span_is_neutral(s3):
    e = s3.identity
    s = transitive_span(s3, 1, 0, e, 4, e)
    assert span_compose(s, identity_span(s.source)).equivalent(s)
    assert span_compose(identity_span(s.target), s).equivalent(s)


def test_empty_apex_absorbs(s3):
    e = s3.identity
    X, Y = GSet.orbit(s3, 1), GSet.orbit(s3, 5)
    zero = Span(X, Y, (), (), ())
    s = transitive_span(s3, 5, 4, e, 4, e)
    comp = span_compose(s, zero)
    assert comp.apex == ()


def test_composition_mismatch(s3):
    e = s3.identity
    s = transitive_span(s3, 1, 0, e, 4, e)
    with pytest.raises(CompositionMismatch):
        span_compose(s, s)


def test_span_validation(s3):
    X, Y = GSet.orbit(s3, 0), GSet.orbit(s3, 1)
    with pytest.raises(ValueError):
        Span(Y, X, (s3.lattice().class_of[4],), ((0, s3.identity),), ((0, s3.identity),))


def test_composition_associative(s3):
    e = s3.identity
    a = transitive_span(s3, 0, 0, e, 1, e)
    b = transitive_span(s3, 1, 1, e, 5, e)
    c = transitive_span(s3, 5, 4, e, 4, e)
    left = span_compose(c, span_compose(b, a))
    right = span_compose(span_compose(c, b), a)
    assert left.equivalent(right)


@pytest.mark.parametrize("h,k,count", [(0, 0, 6), (1, 1, 3), (4, 4, 4), (0, 5, 1), (5, 0, 1)])
def test_hom_basis_counts(s3, h, k, count):
    assert len(hom_basis(s3, h, k)) == count
