"""Generated-case property suites.  CASES counts executed examples per suite."""
from collections import Counter
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from profmackey import cb_space as cb
from profmackey import godement as gd
from profmackey.burnside import burnside_ring
from profmackey.finite_group import builtin, double_cosets
from profmackey.gsets import GSet, gset_product

CASES = Counter()
GROUPS = {name: builtin(name) for name in ["C2", "C4", "C6", "S3", "C2xC2", "Z/8", "C2xC4", "S4"]}
NAMES = sorted(GROUPS)
SETTINGS = settings(max_examples=250, deadline=None, derandomize=True, database=None,
                    suppress_health_check=[HealthCheck.too_slow])


@st.composite
def group_and_subgroups(draw, count=2):
    G = GROUPS[draw(st.sampled_from(NAMES))]
    n = len(G.lattice())
    return (G,) + tuple(draw(st.integers(0, n - 1)) for _ in range(count))


@SETTINGS
@given(group_and_subgroups())
def test_double_coset_partition(data):
    CASES["double_cosets"] += 1
    G, h, k = data
    lat = G.lattice()
    H, K = lat[h], lat[k]
    cosets = double_cosets(G, H, K)
    assert sum(len(c) for _, c in cosets) == G.n
    seen = set()
    for x, c in cosets:
        assert not seen & c
        seen |= c
        inter = lat[lat.intersect(h, lat.conj_index(x, k))]
        assert len(c) * inter.order == H.order * K.order
        assert x == min(c)


def mobius_by_chains(lat, d, k):
    """mu(d, k) from the defining recursion mu(d, e) = -sum of mu(d, f) over d <= f < e."""
    inner = [e for e in range(len(lat)) if lat.leq(d, e) and lat.leq(e, k)]
    inner.sort(key=lambda e: lat[e].order)
    signed = {d: 1}
    for e in inner:
        if e == d:
            continue
        signed[e] = -sum(signed[f] for f in signed if f != e and lat.leq(f, e))
    return signed[k]


@SETTINGS
@given(group_and_subgroups())
def test_mobius_recursion(data):
    CASES["mobius"] += 1
    G, d, k = data
    lat = G.lattice()
    if not lat.leq(d, k):
        d, k = k, d
    if not lat.leq(d, k):
        d = 0
    assert lat.mobius(d, k) == mobius_by_chains(lat, d, k)
    total = sum(lat.mobius(d, e) for e in range(len(lat)) if lat.leq(d, e) and lat.leq(e, k))
    assert total == (1 if d == k else 0)


coeff = st.integers(-4, 4)


@st.composite
def group_and_elements(draw):
    G = GROUPS[draw(st.sampled_from(NAMES))]
    r = len(G.lattice().classes)
    return G, draw(st.lists(coeff, min_size=r, max_size=r)), draw(st.lists(coeff, min_size=r, max_size=r))


def product_by_gsets(G, x, y):
    lat = G.lattice()
    out = [0] * len(lat.classes)
    for a, ca in enumerate(x):
        for b, cb_ in enumerate(y):
            if ca and cb_:
                P = gset_product(GSet.orbit(G, lat.reps[a]), GSet.orbit(G, lat.reps[b]))
                for c, m in enumerate(P.counts):
                    out[c] += ca * cb_ * m
    return out


@SETTINGS
@given(group_and_elements())
def test_mark_multiplicativity(data):
    CASES["marks_multiplicative"] += 1
    G, x, y = data
    A = burnside_ring(G)
    ex, ey = A.element(x), A.element(y)
    prod = A.element(product_by_gsets(G, x, y))
    assert list(prod.marks) == [a * b for a, b in zip(ex.marks, ey.marks)]


@SETTINGS
@given(group_and_elements())
def test_marks_basis_round_trip(data):
    CASES["marks_round_trip"] += 1
    G, x, y = data
    A = burnside_ring(G)
    q = [Fraction(a, 1 + abs(b)) for a, b in zip(x, y)]
    assert list(A.coeffs_of(A.marks_of(q))) == q
    assert list(A.marks_of(A.coeffs_of(q))) == q


small = st.integers(-2, 2)


@SETTINGS
@given(small, st.lists(small, min_size=1, max_size=4), st.lists(small, max_size=3), st.integers(1, 4))
def test_germ_fragment_soundness(value, period, prefix, n):
    CASES["germ_fragment"] += 1
    f = gd.GermFamily(value, tuple(period), tuple(prefix), n)
    assert gd.is_section_germ(f) == gd.brute_force_section(f)


@st.composite
def family2d(draw):
    p = draw(st.integers(1, 3))
    bit = st.integers(0, 1)
    vec = lambda: tuple(draw(st.lists(bit, min_size=p, max_size=p)))
    table = lambda: tuple(vec() for _ in range(p))
    return gd.Family2D(draw(bit), vec(), vec(), table(), table(), vec())


@SETTINGS
@given(family2d(), st.integers(1, 5))
def test_germ_fragment_soundness_2d(f, start):
    CASES["germ_fragment_2d"] += 1
    assert gd.is_section_germ_2d(f) == gd.brute_force_section_2d(f, start)


leaves = st.one_of(st.just(cb.Empty()), st.integers(1, 3).map(cb.Discrete), st.just(cb.P))
spaces = st.recursive(leaves, lambda s: st.one_of(st.builds(cb.Sum, s, s), st.builds(cb.Prod, s, s)), max_leaves=5)


@SETTINGS
@given(spaces, spaces)
def test_cb_rank_rules(X, Y):
    CASES["cb_rank"] += 1
    assert cb.rank(X) == cb.rank_by_derivatives(X)
    if not (cb.is_empty(X) or cb.is_empty(Y)):
        assert cb.rank(cb.Prod(X, Y)) == cb.rank(X) + cb.rank(Y) - 1
    assert cb.rank(cb.Sum(X, Y)) == max(cb.rank(X), cb.rank(Y))
    for x in cb.sample_points(X, (1, cb.INF)):
        h = cb.height(X, x)
        assert h < cb.rank(X)
        for k in range(cb.rank(X) + 1):
            # derivatives decrease and x survives exactly h of them
            assert cb.in_derivative(X, k, x) == (k <= h)
