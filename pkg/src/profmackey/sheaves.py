"""Equivariant sheaves on the finite discrete G-space S(G), and their Mackey functors.

A sheaf on a finite discrete space is just a stalk per point.  Here the
points are the subgroups of a finite group G (conjugation action), the stalk
at L is a Q-vector space F_L of some dimension, and g in G acts by matrices
F_L -> F_{gLg^-1}.  The associated Mackey functor takes H to the H-fixed
sections over the subspace of subgroups of H.
"""
from __future__ import annotations

from . import linalg as la
from .errors import NotEquivariant
from .finite_group import transversal


class GSheaf:
    def __init__(self, group, dims, action):
        """action[(g, L)] : F_L -> F_{gLg^-1}, for every element g and point L."""
        self.group = group
        self.lattice = group.lattice()
        self.dims = list(dims)
        if len(self.dims) != len(self.lattice):
            raise NotEquivariant("one stalk dimension per subgroup is required")
        self.action = dict(action)
        self._check_shapes()

    @classmethod
    def from_generators(cls, group, dims, gen_action):
        """Extend generator matrices to all elements by composing along words."""
        lat = group.lattice()
        e = group.identity
        full = {(e, L): la.eye(dims[L]) for L in range(len(lat))}
        reached = [e]
        seen = {e}
        t = group.table
        for g in reached:
            for s in group.generators():
                sg = t[s][g]
                if sg in seen:
                    continue
                seen.add(sg)
                reached.append(sg)
                for L in range(len(lat)):
                    gL = lat.conj_index(g, L)
                    full[(sg, L)] = la.mul(gen_action[(s, gL)], full[(g, L)])
        return cls(group, dims, full)

    def _check_shapes(self):
        lat = self.lattice
        for g in range(self.group.n):
            for L in range(len(lat)):
                m = self.action.get((g, L))
                gL = lat.conj_index(g, L)
                if m is None or m.shape != (self.dims[gL], self.dims[L]):
                    raise NotEquivariant(f"action matrix for g={g} at point {L} is missing or misshapen")

    def act(self, g, L):
        return self.action[(g, L)]

    def equivariance_violations(self):
        """Instances where a_gh != a_g a_h or a_e != id."""
        G, lat = self.group, self.lattice
        bad = []
        for L in range(len(lat)):
            if not la.equal(self.act(G.identity, L), la.eye(self.dims[L])):
                bad.append(("identity", G.identity, G.identity, L))
        for g in G.generators():
            for h in range(G.n):
                for L in range(len(lat)):
                    lhs = self.act(G.table[g][h], L)
                    rhs = la.mul(self.act(g, lat.conj_index(h, L)), self.act(h, L))
                    if not la.equal(lhs, rhs):
                        bad.append(("composition", g, h, L))
        return bad

    def check(self):
        bad = self.equivariance_violations()
        if bad:
            raise NotEquivariant(f"action is not a group action: first failure {bad[0]}")
        return self

    def weyl_violations(self):
        """Points L where some l in L acts nontrivially on F_L."""
        lat = self.lattice
        out = []
        for L in range(len(lat)):
            eye = la.eye(self.dims[L])
            if any(not la.equal(self.act(l, L), eye) for l in lat[L].members):
                out.append(L)
        return out

    def is_weyl(self):
        return not self.weyl_violations()


class Sections:
    """Basis of the H-fixed sections of a sheaf over the points below H."""

    def __init__(self, sheaf: GSheaf, h):
        self.sheaf = sheaf
        self.h = h
        lat = sheaf.lattice
        self.points = lat.below(h)
        self.offset = {}
        off = 0
        for L in self.points:
            self.offset[L] = off
            off += sheaf.dims[L]
        self.total = off
        H = lat[h]
        cols = []
        for orbit in lat.sub_classes(h):
            L0 = orbit[0]
            d0 = sheaf.dims[L0]
            if d0 == 0:
                continue
            stab = [x for x in H.members if lat.conj_index(x, L0) == L0]
            fixed = la.nullspace(la.vstack(*[la.sub(sheaf.act(x, L0), la.eye(d0)) for x in stab]))
            # one element of H carrying L0 to each point of the orbit
            carriers = {}
            for x in H.members:
                carriers.setdefault(lat.conj_index(x, L0), x)
            for j in range(fixed.shape[1]):
                w = la.columns(fixed, [j])
                vec = [[0] for _ in range(self.total)]
                for L, x in carriers.items():
                    val = la.entries(la.mul(sheaf.act(x, L0), w))
                    for i, row in enumerate(val):
                        vec[self.offset[L] + i][0] = row[0]
                cols.append(la.mat(vec, (self.total, 1)))
        self.basis = la.hstack(*cols) if cols else la.zeros(self.total, 0)
        self.coords = la.Coordinates(self.basis)
        self.dim = self.basis.shape[1]

    def component(self, vec, L):
        off = self.offset[L]
        return la.rows_of(vec, range(off, off + self.sheaf.dims[L]))


def _restrict(big_src: Sections, big_dst: Sections, vecs):
    """Restrict sections over the points of src to the points of dst."""
    rows = []
    for L in big_dst.points:
        off = big_src.offset[L]
        rows.extend(range(off, off + big_src.sheaf.dims[L]))
    return la.rows_of(vecs, rows)


def _translate(sheaf, g, src: Sections, dst: Sections, vecs):
    """g . s for sections s over src points; result laid out on dst points.

    Points of dst not of the form gLg^-1 (L a src point) receive zero, which
    is extension by zero when src covers fewer points.
    """
    lat = sheaf.lattice
    out = [la.zeros(sheaf.dims[L], vecs.shape[1]) for L in dst.points]
    pos = {L: i for i, L in enumerate(dst.points)}
    for L in src.points:
        gL = lat.conj_index(g, L)
        if sheaf.dims[L] == 0:
            continue
        out[pos[gL]] = la.mul(sheaf.act(g, L), src.component(vecs, L))
    return la.vstack(*out) if out else la.zeros(0, vecs.shape[1])


def mackey_from_sheaf(sheaf: GSheaf):
    """The Mackey functor H -> (sections over points below H)^H.

    Returns (functor, sections) where sections[h] is the Sections object
    whose basis defines the coordinates of M(H).
    """
    from .mackey import MackeyFunctor

    G = sheaf.group
    lat = sheaf.lattice
    secs = {h: Sections(sheaf, h) for h in range(len(lat))}
    dims = {h: s.dim for h, s in secs.items()}
    res, ind, conj = {}, {}, {}
    for h in range(len(lat)):
        SH = secs[h]
        for k in lat.below(h):
            SK = secs[k]
            res[(h, k)] = SK.coords.of(_restrict(SH, SK, SH.basis))
            acc = la.zeros(SH.total, SK.dim)
            for t in transversal(G, lat[h], lat[k]):
                acc = la.add(acc, _translate(sheaf, t, SK, SH, SK.basis))
            ind[(h, k)] = SH.coords.of(acc)
        for g in G.generators():
            gh = lat.conj_index(g, h)
            conj[(g, h)] = secs[gh].coords.of(_translate(sheaf, g, SH, secs[gh], SH.basis))
    M = MackeyFunctor(G, dims, res, ind, conj, name="Mackey(F)")
    return M, secs


def mackey_from_sheaf_level(sheaf: GSheaf, h):
    """The vector space Mackey(F)(H): (dimension, basis of fixed sections)."""
    sheaf.check()
    s = Sections(sheaf, h)
    return s.dim, s.basis
