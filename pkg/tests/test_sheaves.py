from profmackey import linalg as la
from profmackey import mackey as mk
from profmackey.finite_group import cyclic
from profmackey.sheaves import GSheaf, Sections, mackey_from_sheaf_level
from profmackey.errors import NotEquivariant

import pytest


def constant_sheaf(G, dims):
    lat = G.lattice()
    return GSheaf(G, dims, {(g, L): la.eye(dims[lat.conj_index(g, L)]) if dims[L] else la.zeros(0, 0)
                            for g in range(G.n) for L in range(len(lat))})


def test_constant_sheaf_on_cp():
    G = cyclic(3)
    sheaf = constant_sheaf(G, [1, 1])
    dim, basis = mackey_from_sheaf_level(sheaf, 1)
    assert dim == 2 and basis.shape == (2, 2)


def test_zero_sheaf():
    G = cyclic(2)
    assert mackey_from_sheaf_level(constant_sheaf(G, [0, 0]), 1)[0] == 0


def test_orbit_sheaf_s3(s3):
    # Q on each conjugate of <(1 2)>, permuted by conjugation
    lat = s3.lattice()
    dims = [1 if L in (1, 2, 3) else 0 for L in range(len(lat))]
    sheaf = constant_sheaf(s3, dims)
    assert sheaf.is_weyl() and not sheaf.equivariance_violations()
    assert Sections(sheaf, 5).dim == 1
    assert Sections(sheaf, 2).dim == 1
    assert Sections(sheaf, 4).dim == 0


def test_non_weyl_sheaf_detected():
    G = cyclic(2)
    act = {(0, 0): la.eye(1), (1, 0): la.eye(1), (0, 1): la.eye(1), (1, 1): la.scalar(1, -1)}
    sheaf = GSheaf(G, [1, 1], act)
    assert sheaf.weyl_violations() == [1]


def test_bad_action_rejected():
    G = cyclic(2)
    act = {(0, 0): la.eye(1), (1, 0): la.scalar(1, 2), (0, 1): la.eye(1), (1, 1): la.eye(1)}
    with pytest.raises(NotEquivariant):
        GSheaf(G, [1, 1], act).check()
    with pytest.raises(NotEquivariant):
        GSheaf(G, [1], {})


def test_split_of_sheaf_functor_recovers_stalks(s3):
    sheaf = constant_sheaf(s3, [1, 2, 2, 2, 0, 1])
    fam = mk.family_from_sheaf(s3, sheaf)
    assert fam.dims() == {0: 1, 1: 2, 4: 0, 5: 1}
    M = mk.rebuild(fam)
    assert mk.family_isomorphic(mk.split(M), fam)
