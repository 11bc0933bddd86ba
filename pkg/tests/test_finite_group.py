import itertools
from fractions import Fraction

import pytest

from profmackey.errors import (GroupTooLarge, InvalidGroup, NotComparable, NotNormal, NotSubgroup,
                               UnknownGroup)
from profmackey.finite_group import (FiniteGroup, builtin, core, cyclic, double_cosets, enumerate_subgroups,
                                     is_normal, load_group, mobius, normalizer, parse_cycles, parse_group_text,
                                     quotient, subgroup_label, transversal, weyl_group)


def brute_force_subgroups(G):
    """Every subset closed under the product; feasible for |G| <= 8."""
    out = set()
    elems = range(G.n)
    for r in range(1, G.n + 1):
        for sub in itertools.combinations(elems, r):
            s = set(sub)
            if G.identity in s and all(G.table[a][b] in s for a in s for b in s):
                out.add(tuple(sorted(s)))
    return out


def number_mobius(n):
    mu, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            mu = -mu
        p += 1
    return -mu if m > 1 else mu


@pytest.mark.parametrize("name,subs,classes", [
    ("C1", 1, 1), ("C4", 3, 3), ("S3", 6, 4), ("C6", 4, 4), ("C2xC2", 5, 5), ("Z/2^3", 4, 4), ("S4", 30, 11),
])
def test_subgroup_counts(name, subs, classes):
    lat = builtin(name).lattice()
    assert (len(lat), len(lat.classes)) == (subs, classes)


@pytest.mark.parametrize("name", ["C4", "S3", "C6", "C2xC2", "Z/2^3"])
def test_lattice_matches_brute_force(name):
    G = builtin(name)
    assert {s.members for s in G.lattice().subgroups} == brute_force_subgroups(G)


def test_s5_lattice():
    lat = builtin("S5").lattice()
    assert (len(lat), len(lat.classes)) == (156, 19)


def test_lattice_ordering_and_classes(s3):
    lat = s3.lattice()
    assert [s.order for s in lat.subgroups] == [1, 2, 2, 2, 3, 6]
    assert lat.classes == [[0], [1, 2, 3], [4], [5]]
    assert lat.reps == [0, 1, 4, 5]


def test_identity_is_detected_not_assumed():
    # C3 with elements relabelled so that the identity is 2
    perm = [2, 0, 1]
    base = cyclic(3).table
    inv = {perm[i]: i for i in range(3)}
    table = [[perm[base[inv[a]][inv[b]]] for b in range(3)] for a in range(3)]
    G = FiniteGroup(table, "C3'")
    assert G.identity == 2
    assert len(G.lattice()) == 2


@pytest.mark.parametrize("table", [
    [[0, 1], [1, 1]],              # not a latin square
    [[0, 1, 2], [1, 0, 2], [2, 2, 0]],
    [[0, 1], [1]],
])
def test_invalid_tables(table):
    with pytest.raises(InvalidGroup):
        FiniteGroup(table)


def test_non_associative_latin_square():
    # a latin square with identity 0 that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidGroup):
        FiniteGroup(t)


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        builtin("C600")
    with pytest.raises(GroupTooLarge):
        enumerate_subgroups(cyclic(20), bound=10)


def test_unknown_group():
    with pytest.raises(UnknownGroup):
        builtin("Q8")
    with pytest.raises(UnknownGroup):
        builtin("S6")


def test_normalizer_core_weyl(s3):
    lat = s3.lattice()
    H = lat[2]                                # <(1 2)>
    assert subgroup_label(s3, H) == "<(1 2)>"
    assert normalizer(s3, H) == H
    assert core(s3, H) == s3.trivial()
    assert core(s3, s3.full()) == s3.full()
    W, proj, lift = weyl_group(s3, H)
    assert W.n == 1
    W3, _, _ = weyl_group(s3, lat[4])
    assert W3.n == 2
    W1, _, _ = weyl_group(s3, s3.trivial())
    assert W1.n == 6


def test_double_cosets(s3, c4):
    G = s3
    full = double_cosets(G, G.full(), G.full())
    assert [x for x, _ in full] == [G.identity]
    dc = double_cosets(c4, c4.trivial(), c4.trivial())
    assert len(dc) == 4
    H = G.lattice()[2]
    sizes = sorted(len(c) for _, c in double_cosets(G, H, H))
    assert sizes == [2, 4]


def test_double_cosets_partition_within(s3):
    lat = s3.lattice()
    for h in range(len(lat)):
        for k in range(len(lat)):
            cosets = [c for _, c in double_cosets(s3, lat[h], lat[k])]
            assert sum(len(c) for c in cosets) == s3.n
            assert set().union(*cosets) == set(range(s3.n))


def test_transversal(c4, s3):
    lat = c4.lattice()
    assert transversal(c4, lat[2], lat[2]) == [c4.identity]
    assert len(transversal(c4, lat[2], lat[1])) == 2
    with pytest.raises(NotSubgroup):
        transversal(s3, s3.lattice()[1], s3.lattice()[4])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 12])
def test_mobius_cyclic_matches_number_theory(n):
    G = cyclic(n)
    lat = G.lattice()
    assert mobius(lat, G.trivial(), G.full()) == number_mobius(n)


def test_mobius_values(s3):
    lat = s3.lattice()
    assert mobius(lat, s3.trivial(), s3.full()) == Fraction(3)
    assert mobius(lat, lat[1], lat[1]) == 1
    with pytest.raises(NotComparable):
        lat.mobius(1, 2)


def test_mobius_chain_count_s3():
    # c_1 = 1 chain e < G, c_2 = 4 chains e < X < G: mu = -1 + 4
    G = builtin("S3")
    lat = G.lattice()
    middle = [i for i in range(1, len(lat) - 1)]
    assert -1 + len(middle) == lat.mobius(0, len(lat) - 1)


def test_quotient(s3):
    lat = s3.lattice()
    Q, proj, lift = quotient(s3, lat[4])
    assert Q.n == 2
    with pytest.raises(NotNormal):
        quotient(s3, lat[1])
    assert is_normal(s3, lat[4]) and not is_normal(s3, lat[1])


def test_parse_cycles():
    assert parse_cycles("(1 2 3)") == (1, 2, 0)
    assert parse_cycles("(1,2)(3)", 3) == (1, 0, 2)
    assert parse_cycles("()", 2) == (0, 1)
    for bad in ["(1 2", "1 2", "(1 1)", "(a b)"]:
        with pytest.raises(InvalidGroup):
            parse_cycles(bad)


def test_group_files(tmp_path):
    G = parse_group_text("perm\n# S3 from two transpositions\n(1 2)\n(1 2 3)\n")
    assert G.n == 6 and len(G.lattice()) == 6
    H = parse_group_text("cayley\n0 1\n1 0\n")
    assert H.n == 2
    f = tmp_path / "k4.txt"
    f.write_text("cayley\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n")
    K = load_group(str(f))
    assert len(K.lattice()) == 5
    with pytest.raises(InvalidGroup):
        parse_group_text("matrix\n1 0\n")
    with pytest.raises(InvalidGroup):
        parse_group_text("")


def test_s3_labels(s3):
    assert s3.labels == ["()", "(2 3)", "(1 2)", "(1 2 3)", "(1 3 2)", "(1 3)"]
    assert subgroup_label(s3, s3.trivial()) == "1"
