from fractions import Fraction as F

import pytest

from profmackey.burnside import (burnside_report, burnside_ring, decompose_unit, idempotent, idempotent_finite,
                                 idempotent_level, inflate_element, marks_matrix, multiply, top_idempotent)
from profmackey.errors import NotSubgroup, UnknownLevel
from profmackey.finite_group import builtin, cyclic, quotient
from profmackey.gsets import GSet, fixed_count, gset_product


def test_marks_small():
    assert marks_matrix(builtin("C1")) == [[1]]
    assert marks_matrix(cyclic(5)) == [[5, 0], [1, 1]]


def test_marks_s3(s3):
    assert marks_matrix(s3) == [[6, 0, 0, 0], [3, 1, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]]


def test_marks_match_fixed_counts():
    for name in ["S3", "C2xC2", "C6", "S4"]:
        G = builtin(name)
        lat = G.lattice()
        M = marks_matrix(G)
        for a, ra in enumerate(lat.reps):
            for b, rb in enumerate(lat.reps):
                assert M[a][b] == fixed_count(GSet.orbit(G, ra), lat[rb])


def test_multiplication(s3):
    A = burnside_ring(s3)
    x = A.basis(2)
    assert x * x == A.basis(2).scale(2)
    free = A.basis(0)
    assert free * free == free.scale(6)
    assert A.one() * x == x
    assert multiply(x, A.zero()) == A.zero()


def test_multiplication_matches_gset_product():
    G = builtin("S4")
    A = burnside_ring(G)
    lat = G.lattice()
    for a, ra in enumerate(lat.reps):
        for b, rb in enumerate(lat.reps):
            P = gset_product(GSet.orbit(G, ra), GSet.orbit(G, rb))
            assert list((A.basis(a) * A.basis(b)).coeffs) == [F(c) for c in P.counts]


def test_s3_idempotents(s3):
    es = decompose_unit(s3)
    assert [list(e.coeffs) for e in es] == [
        [F(1, 6), 0, 0, 0],
        [F(-1, 2), 1, 0, 0],
        [F(-1, 6), 0, F(1, 2), 0],
        [F(1, 2), -1, F(-1, 2), 1],
    ]
    for i, e in enumerate(es):
        assert list(e.marks) == [1 if j == i else 0 for j in range(4)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_prime_idempotents(p):
    G = cyclic(p)
    e_trivial, e_top = decompose_unit(G)
    assert list(e_trivial.coeffs) == [F(1, p), 0]
    assert list(e_top.coeffs) == [F(-1, p), 1]
    assert list(e_top.marks) == [0, 1]
    assert idempotent_finite(G, G.full()) == e_top


def test_c4_idempotents():
    es = decompose_unit(builtin("C4"))
    assert [list(e.coeffs) for e in es] == [[F(1, 4), 0, 0], [F(-1, 4), F(1, 2), 0], [0, F(-1, 2), 1]]


def test_level_idempotent():
    # Z/8 with NK the subgroup of order 2: (1/4)[G/NK] - (1/8)[G/e]
    G = cyclic(8)
    lat = G.lattice()
    k = next(i for i in range(len(lat)) if lat[i].order == 2)
    e = idempotent_level([cyclic(2), cyclic(4), G], 2, k)
    assert list(e.coeffs) == [F(-1, 8), F(1, 4), 0, 0]
    assert list(e.marks) == [0, 1, 0, 0]
    assert list(idempotent_level([builtin("C1")], 0, 0).coeffs) == [1]
    with pytest.raises(UnknownLevel):
        idempotent_level([G], 3, 0)
    with pytest.raises(NotSubgroup):
        idempotent_level([G], 0, 9)


def test_top_idempotent_in_subgroup_ring(s3):
    e = top_idempotent(s3, 4)
    # A(C3): e_C3 = [C3/C3] - 1/3 [C3/e]
    assert list(e.coeffs) == [F(-1, 3), 1]
    assert e.is_idempotent()


def test_idempotent_rejects_non_subgroup(s3):
    A = burnside_ring(s3, 4)
    with pytest.raises(NotSubgroup):
        idempotent(A, 1)


def test_inflation():
    G = cyclic(4)
    lat = G.lattice()
    Q, proj, _ = quotient(G, lat[1])
    pi = [proj[g] for g in range(G.n)]
    top = decompose_unit(Q)[1]
    inf = inflate_element(top, G, pi)
    assert list(inf.marks) == [0, 0, 1]
    assert inf.is_idempotent()


def test_report_json():
    r = burnside_report(builtin("C3"), idempotents=True)
    assert r["marks_matrix"] == [["3/1", "0/1"], ["1/1", "1/1"]]
    assert [row["coeffs"] for row in r["idempotents"]] == [["1/3", "0/1"], ["-1/3", "1/1"]]
    assert [row["marks"] for row in r["idempotents"]] == [["1/1", "0/1"], ["0/1", "1/1"]]
