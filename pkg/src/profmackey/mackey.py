"""Mackey functors for a finite group as exact rational linear data.

A MackeyFunctor stores, for every subgroup H in its domain (lattice
indices), the dimension of M(H); restriction and induction matrices for
every pair K <= H in the domain; and conjugation matrices C_g: M(H) ->
M(gHg^-1) for the generators g of the group.  Conjugation by an arbitrary
element is composed along a fixed word in the generators.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg as la
from .burnside import burnside_ring, idempotent
from .errors import DimensionMismatch, GroupMismatch, InvalidInput, NotFinite, NotNormal
from .finite_group import FiniteGroup, double_cosets, is_normal, load_group, transversal, weyl_group
from .sheaves import GSheaf, mackey_from_sheaf


class MackeyFunctor:
    def __init__(self, group: FiniteGroup, dims, res, ind, conj, domain=None, name="M"):
        self.group = group
        self.lattice = group.lattice()
        lat = self.lattice
        self.domain = sorted(domain) if domain is not None else list(range(len(lat)))
        self.dims = {h: int(dims[h]) for h in self.domain}
        self.res = dict(res)
        self.ind = dict(ind)
        self.conj = dict(conj)
        self.name = name
        self._words = None
        self._conj_cache = {}
        self._check_shapes()

    def __repr__(self):
        return f"MackeyFunctor({self.name} over {self.group.name}, dims={[self.dims[h] for h in self.domain]})"

    # -- structure -----------------------------------------------------------
    def pairs(self):
        lat = self.lattice
        dom = set(self.domain)
        return [(h, k) for h in self.domain for k in lat.below(h) if k in dom]

    def _check_shapes(self):
        lat = self.lattice
        dom = set(self.domain)
        for h in self.domain:
            for g in range(self.group.n):
                if lat.conj_index(g, h) not in dom:
                    raise InvalidInput("domain is not closed under conjugation")
        for h, k in self.pairs():
            r = self.res.get((h, k))
            i = self.ind.get((h, k))
            if r is None or i is None:
                raise DimensionMismatch(f"missing restriction/induction for pair ({h}, {k})")
            if r.shape != (self.dims[k], self.dims[h]):
                raise DimensionMismatch(f"R[{h},{k}] has shape {r.shape}")
            if i.shape != (self.dims[h], self.dims[k]):
                raise DimensionMismatch(f"I[{h},{k}] has shape {i.shape}")
        for g in self.group.generators():
            for h in self.domain:
                c = self.conj.get((g, h))
                gh = lat.conj_index(g, h)
                if c is None:
                    raise DimensionMismatch(f"missing conjugation for generator {g} at {h}")
                if c.shape != (self.dims[gh], self.dims[h]):
                    raise DimensionMismatch(f"C[{g},{h}] has shape {c.shape}")

    def R(self, h, k):
        return self.res[(h, k)]

    def I(self, h, k):
        return self.ind[(h, k)]

    def _word_table(self):
        if self._words is None:
            G = self.group
            parent = {G.identity: None}
            order = [G.identity]
            for g in order:
                for s in G.generators():
                    sg = G.table[s][g]
                    if sg not in parent:
                        parent[sg] = (s, g)
                        order.append(sg)
            self._words = parent
        return self._words

    def C(self, g, h):
        """Conjugation M(H) -> M(gHg^-1), composed along a word in the generators."""
        key = (g, h)
        if key in self._conj_cache:
            return self._conj_cache[key]
        words = self._word_table()
        p = words[g]
        if p is None:
            m = la.eye(self.dims[h])
        else:
            s, rest = p
            m = la.mul(self.conj[(s, self.lattice.conj_index(rest, h))], self.C(rest, h))
        self._conj_cache[key] = m
        return m

    def total_dim(self):
        return sum(self.dims.values())

    def replace(self, res=None, ind=None, conj=None, name=None):
        r = dict(self.res)
        r.update(res or {})
        i = dict(self.ind)
        i.update(ind or {})
        c = dict(self.conj)
        c.update(conj or {})
        return MackeyFunctor(self.group, self.dims, r, i, c, domain=self.domain, name=name or self.name)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class Violation:
    label: str
    witness: dict
    residual: object = field(repr=False)

    def to_json(self):
        return {"axiom": self.label, "witness": self.witness,
                "residual": la.to_strings(self.residual), "residual_zero": la.is_zero(self.residual)}


@dataclass
class AxiomReport:
    functor: str
    checked: int
    violations: list

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"functor": self.functor, "instances_checked": self.checked,
                "status": "all axioms pass" if self.ok else "violations found",
                "violations": [v.to_json() for v in self.violations]}


def _diff(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare shapes {a.shape} and {b.shape}")
    return la.sub(a, b)


def axiom_check(M: MackeyFunctor) -> AxiomReport:
    G, lat = M.group, M.lattice
    dom = set(M.domain)
    checks = 0
    bad = []

    def test(label, witness, lhs, rhs):
        nonlocal checks
        checks += 1
        d = _diff(lhs, rhs)
        if not la.is_zero(d):
            bad.append(Violation(label, witness, d))

    try:
        # identities
        for h in M.domain:
            eye = la.eye(M.dims[h])
            test("identity-R", {"H": h}, M.R(h, h), eye)
            test("identity-I", {"H": h}, M.I(h, h), eye)
            for x in lat[h].members:
                test("conj-inner", {"H": h, "g": x}, M.C(x, h), eye)
        # transitivity
        for h, k in M.pairs():
            for l in lat.below(k):
                if l not in dom:
                    continue
                w = {"H": h, "K": k, "L": l}
                test("transitivity-R", w, la.mul(M.R(k, l), M.R(h, k)), M.R(h, l))
                test("transitivity-I", w, la.mul(M.I(h, k), M.I(k, l)), M.I(h, l))
        # conjugation is a homomorphism: C_{sg} = C_s C_g
        for s in G.generators():
            for g in range(G.n):
                for h in M.domain:
                    test("conj-composition", {"H": h, "g": g, "s": s},
                         M.C(G.table[s][g], h), la.mul(M.C(s, lat.conj_index(g, h)), M.C(g, h)))
        # equivariance of R and I
        for s in G.generators():
            for h, k in M.pairs():
                sh, sk = lat.conj_index(s, h), lat.conj_index(s, k)
                w = {"H": h, "K": k, "g": s}
                test("equivariance-R", w, la.mul(M.R(sh, sk), M.C(s, h)), la.mul(M.C(s, k), M.R(h, k)))
                test("equivariance-I", w, la.mul(M.I(sh, sk), M.C(s, k)), la.mul(M.C(s, h), M.I(h, k)))
        # double coset formula
        for h in M.domain:
            below = [k for k in lat.below(h) if k in dom]
            for k in below:
                for l in below:
                    lhs = la.mul(M.R(h, k), M.I(h, l))
                    rhs = la.zeros(M.dims[k], M.dims[l])
                    for x, _ in double_cosets(G, lat[k], lat[l], within=lat[h]):
                        xl = lat.conj_index(x, l)
                        a = lat.intersect(k, xl)                       # K cap xLx^-1
                        b = lat.intersect(l, lat.conj_index(G.inv[x], k))  # L cap x^-1Kx
                        rhs = la.add(rhs, la.chain(M.I(k, a), M.C(x, b), M.R(l, b)))
                    test("mackey", {"H": h, "K": k, "L": l}, lhs, rhs)
    except ValueError as exc:
        raise DimensionMismatch(str(exc)) from None
    return AxiomReport(M.name, checks, bad)


# ---------------------------------------------------------------------------
# standard functors


def burnside_functor(G: FiniteGroup) -> MackeyFunctor:
    """H -> A(H) (x) Q in the orbit basis."""
    lat = G.lattice()
    rings = {h: burnside_ring(G, h) for h in range(len(lat))}
    dims = {h: r.rank for h, r in rings.items()}
    res, ind, conj = {}, {}, {}
    for h in range(len(lat)):
        A = rings[h]
        for k in lat.below(h):
            B = rings[k]
            rm = [[0] * A.rank for _ in range(B.rank)]
            im = [[0] * B.rank for _ in range(A.rank)]
            for j, l in enumerate(A.reps):
                for x, _ in double_cosets(G, lat[k], lat[l], within=lat[h]):
                    rm[B.class_of(lat.intersect(k, lat.conj_index(x, l)))][j] += 1
            for j, l in enumerate(B.reps):
                im[A.class_of(l)][j] += 1
            res[(h, k)] = la.mat(rm, (B.rank, A.rank))
            ind[(h, k)] = la.mat(im, (A.rank, B.rank))
        for g in G.generators():
            gh = lat.conj_index(g, h)
            C = rings[gh]
            cm = [[0] * A.rank for _ in range(C.rank)]
            for j, l in enumerate(A.reps):
                cm[C.class_of(lat.conj_index(g, l))][j] += 1
            conj[(g, h)] = la.mat(cm, (C.rank, A.rank))
    return MackeyFunctor(G, dims, res, ind, conj, name="burnside")


def zero_functor(G: FiniteGroup, domain=None) -> MackeyFunctor:
    lat = G.lattice()
    dom = list(range(len(lat))) if domain is None else list(domain)
    d = set(dom)
    dims = {h: 0 for h in dom}
    res = {(h, k): la.zeros(0, 0) for h in dom for k in lat.below(h) if k in d}
    conj = {(g, h): la.zeros(0, 0) for g in G.generators() for h in dom}
    return MackeyFunctor(G, dims, res, dict(res), conj, domain=dom, name="zero")


def fixed_point_functor(G: FiniteGroup, rep=None, name="fixed-point") -> MackeyFunctor:
    """H -> V^H for a Q[G]-module V (default: trivial one-dimensional).

    rep maps each element g to its matrix.  Restriction is inclusion of
    fixed points, induction is the relative trace, conjugation is the action.
    With the trivial module this is Q everywhere, R = 1, I = [H:K], C = 1.
    """
    lat = G.lattice()
    if rep is None:
        rep = {g: la.eye(1) for g in range(G.n)}
    n = rep[G.identity].shape[0]
    fixed = {}
    for h in range(len(lat)):
        gens = lat[h].members
        fixed[h] = la.nullspace(la.vstack(*[la.sub(rep[x], la.eye(n)) for x in gens])) if n else la.zeros(0, 0)
    coords = {h: la.Coordinates(b) for h, b in fixed.items()}
    dims = {h: b.shape[1] for h, b in fixed.items()}
    res, ind, conj = {}, {}, {}
    for h in range(len(lat)):
        for k in lat.below(h):
            res[(h, k)] = coords[k].of(fixed[h])
            tr = la.zeros(n, n)
            for t in transversal(G, lat[h], lat[k]):
                tr = la.add(tr, rep[t])
            ind[(h, k)] = coords[h].of(la.mul(tr, fixed[k]))
        for g in G.generators():
            gh = lat.conj_index(g, h)
            conj[(g, h)] = coords[gh].of(la.mul(rep[g], fixed[h]))
    return MackeyFunctor(G, dims, res, ind, conj, name=name)


def builtin_functor(G: FiniteGroup, name: str) -> MackeyFunctor:
    if name == "burnside":
        return burnside_functor(G)
    if name == "zero":
        return zero_functor(G)
    if name in ("fixed", "fixed-point", "constant"):
        return fixed_point_functor(G)
    raise InvalidInput(f"unknown built-in functor {name!r}")


# ---------------------------------------------------------------------------
# Burnside action and idempotents


def burnside_action(M: MackeyFunctor, h, x) -> object:
    """Matrix of x in A(H) acting on M(H); [H/L] acts as I^H_L R^H_L."""
    ring = x.ring
    if ring.group is not M.group or ring.h != h:
        raise GroupMismatch("Burnside element is not in A(H) for this H")
    d = M.dims[h]
    out = la.zeros(d, d)
    for c, l in enumerate(ring.reps):
        q = x.coeffs[c]
        if q:
            out = la.add(out, la.scale(la.mul(M.I(h, l), M.R(h, l)), q))
    return out


def idempotent_projector(M: MackeyFunctor, h, k):
    """Action of e_K in A(H) on M(H)."""
    return burnside_action(M, h, idempotent(burnside_ring(M.group, h), k))


def top_projector(M: MackeyFunctor, h):
    return M.group.memo(("top-proj", id(M), h), lambda: idempotent_projector(M, h, h))


@dataclass
class Piece:
    sub: int
    projector: object = field(repr=False)
    basis: object = field(repr=False)

    @property
    def dim(self):
        return self.basis.shape[1]


def idempotent_sheaf_pieces(M: MackeyFunctor, h):
    """Images e_K M(H), one per H-class (K) of subgroups of H.

    Raises if the pieces are not complementary (which would mean M is not
    a Mackey functor).
    """
    ring = burnside_ring(M.group, h)
    pieces = []
    total = la.zeros(M.dims[h], M.dims[h])
    for k in ring.reps:
        P = idempotent_projector(M, h, k)
        pieces.append(Piece(k, P, la.column_basis(P)))
        total = la.add(total, P)
    if not la.equal(total, la.eye(M.dims[h])) or sum(p.dim for p in pieces) != M.dims[h]:
        raise DimensionMismatch("idempotent pieces are not complementary")
    return pieces


def restriction_commutation_check(M: MackeyFunctor, h, k, s=None):
    """Compare R^G_H(e_K s) with the sum over x in J of e_{xKx^-1} R^G_H(s).

    J runs over x in H\\G/N_G(K) with xKx^-1 <= H.  s defaults to the
    identity (all basis vectors of M(G)).  Returns (ok, residual, J) where J
    lists the subgroups xKx^-1.
    """
    G, lat = M.group, M.lattice
    top = len(lat) - 1
    if s is None:
        s = la.eye(M.dims[top])
    nk = G.subgroup([g for g in range(G.n) if lat.conj_index(g, k) == k], check=False)
    lhs = la.chain(M.R(top, h), idempotent_projector(M, top, k), s)
    rs = la.mul(M.R(top, h), s)
    rhs = la.zeros(*lhs.shape)
    J = []
    for x, _ in double_cosets(G, lat[h], nk):
        xk = lat.conj_index(x, k)
        if lat.leq(xk, h):
            J.append(xk)
            rhs = la.add(rhs, la.mul(idempotent_projector(M, h, xk), rs))
    res = la.sub(lhs, rhs)
    return la.is_zero(res), res, J


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    maps: dict

    def violations(self):
        S, T = self.source, self.target
        if S.group is not T.group or S.domain != T.domain:
            raise GroupMismatch("morphism between functors on different groups")
        lat = S.lattice
        bad = []
        for h in S.domain:
            f = self.maps[h]
            if f.shape != (T.dims[h], S.dims[h]):
                raise DimensionMismatch(f"map at {h} has shape {f.shape}")
        for h, k in S.pairs():
            d = la.sub(la.mul(self.maps[k], S.R(h, k)), la.mul(T.R(h, k), self.maps[h]))
            if not la.is_zero(d):
                bad.append(Violation("natural-R", {"H": h, "K": k}, d))
            d = la.sub(la.mul(self.maps[h], S.I(h, k)), la.mul(T.I(h, k), self.maps[k]))
            if not la.is_zero(d):
                bad.append(Violation("natural-I", {"H": h, "K": k}, d))
        for g in S.group.generators():
            for h in S.domain:
                gh = lat.conj_index(g, h)
                d = la.sub(la.mul(self.maps[gh], S.C(g, h)), la.mul(T.C(g, h), self.maps[h]))
                if not la.is_zero(d):
                    bad.append(Violation("natural-C", {"H": h, "g": g}, d))
        return bad

    def is_morphism(self):
        return not self.violations()

    def is_isomorphism(self):
        return self.is_morphism() and all(la.is_invertible(self.maps[h]) for h in self.source.domain)

    def compose(self, first):
        """self after first."""
        return MackeyMorphism(first.source, self.target,
                              {h: la.mul(self.maps[h], first.maps[h]) for h in first.source.domain})


def identity_morphism(M):
    return MackeyMorphism(M, M, {h: la.eye(M.dims[h]) for h in M.domain})


# ---------------------------------------------------------------------------
# Weyl modules and the finite classification


@dataclass
class WeylModule:
    """A Q[W]-module for W = N_G(K)/K, K a class representative."""

    sub: int
    weyl: FiniteGroup
    proj: dict          # element of N_G(K) -> index in W
    lift: list          # index in W -> least element of the coset
    action: list        # index in W -> matrix

    @property
    def dim(self):
        return self.action[self.weyl.identity].shape[0]

    def relation_violations(self):
        W = self.weyl
        bad = []
        if not la.equal(self.action[W.identity], la.eye(self.dim)):
            bad.append((W.identity, W.identity))
        for a in range(W.n):
            for b in range(W.n):
                if not la.equal(la.mul(self.action[a], self.action[b]), self.action[W.table[a][b]]):
                    bad.append((a, b))
        return bad

    def of(self, n):
        """Matrix of an element n of N_G(K)."""
        return self.action[self.proj[n]]


class WeylModuleFamily:
    def __init__(self, group: FiniteGroup, modules):
        self.group = group
        self.modules = {m.sub: m for m in modules}
        lat = group.lattice()
        if sorted(self.modules) != sorted(lat.reps):
            raise InvalidInput("a Weyl module family needs one module per conjugacy class")
        for m in self.modules.values():
            if m.relation_violations():
                raise InvalidInput(f"action at class of {m.sub} does not respect the group law")

    def dims(self):
        return {k: m.dim for k, m in sorted(self.modules.items())}

    def to_json(self):
        from .finite_group import subgroup_label
        lat = self.group.lattice()
        out = []
        for k, m in sorted(self.modules.items()):
            out.append({"class": subgroup_label(self.group, lat[k]), "dim": m.dim, "weyl_order": m.weyl.n,
                        "action": {str(m.lift[w]): la.to_strings(m.action[w]) for w in range(m.weyl.n)}})
        return out


def weyl_data(G: FiniteGroup, k):
    W, proj, lift = weyl_group(G, G.lattice()[k])
    return W, proj, lift


@dataclass
class WeylSheafData:
    """The G-sheaf L -> e_L M(L) extracted from a Mackey functor."""

    sheaf: GSheaf
    bases: dict       # L -> basis of e_L M(L) inside M(L)
    coords: dict      # L -> Coordinates for that basis
    projectors: dict  # L -> top idempotent action on M(L)


def weyl_sheaf(M: MackeyFunctor) -> WeylSheafData:
    G, lat = M.group, M.lattice
    if M.domain != list(range(len(lat))):
        raise InvalidInput("the classification needs a functor defined on every subgroup")
    proj = {L: idempotent_projector(M, L, L) for L in range(len(lat))}
    bases = {L: la.column_basis(P) for L, P in proj.items()}
    coords = {L: la.Coordinates(B) for L, B in bases.items()}
    dims = [bases[L].shape[1] for L in range(len(lat))]
    action = {}
    for g in range(G.n):
        for L in range(len(lat)):
            gL = lat.conj_index(g, L)
            action[(g, L)] = coords[gL].exact(la.mul(M.C(g, L), bases[L]))
    return WeylSheafData(GSheaf(G, dims, action), bases, coords, proj)


def split(M) -> WeylModuleFamily:
    """Class (K) -> e_K M(K) with its N_G(K)/K action."""
    if not isinstance(M, MackeyFunctor):
        raise NotFinite("split works level by level on Mackey functors for finite groups")
    data = weyl_sheaf(M)
    return family_from_sheaf(M.group, data.sheaf)


def family_from_sheaf(G, sheaf: GSheaf) -> WeylModuleFamily:
    lat = G.lattice()
    mods = []
    for k in lat.reps:
        W, proj, lift = weyl_data(G, k)
        mods.append(WeylModule(k, W, proj, lift, [sheaf.act(lift[w], k) for w in range(W.n)]))
    return WeylModuleFamily(G, mods)


def class_transports(G):
    """L -> c_L with c_L K c_L^-1 = L for K the class representative of L."""
    def compute():
        lat = G.lattice()
        out = {}
        for L in range(len(lat)):
            K = lat.reps[lat.class_of[L]]
            if K == L:
                out[L] = G.identity
            else:
                out[L] = next(c for c in range(G.n) if lat.conj_index(c, K) == L)
        return out
    return G.memo("class-transports", compute)


def sheaf_from_family(family: WeylModuleFamily) -> GSheaf:
    """Spread each V_K over the conjugates of K using fixed transports."""
    G = family.group
    lat = G.lattice()
    cl = class_transports(G)
    dims = [family.modules[lat.reps[lat.class_of[L]]].dim for L in range(len(lat))]
    action = {}
    t, inv = G.table, G.inv
    for g in range(G.n):
        for L in range(len(lat)):
            mod = family.modules[lat.reps[lat.class_of[L]]]
            gL = lat.conj_index(g, L)
            n = t[t[inv[cl[gL]]][g]][cl[L]]
            action[(g, L)] = mod.of(n)
    return GSheaf(G, dims, action)


def rebuild(family: WeylModuleFamily) -> MackeyFunctor:
    M, _ = mackey_from_sheaf(sheaf_from_family(family))
    M.name = "rebuild"
    return M


@dataclass
class RoundTrip:
    """Explicit isomorphisms for both composites of split and rebuild."""

    functor_iso: MackeyMorphism | None = None
    family_iso: dict | None = None
    problems: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.problems


def sheaf_section_iso(M: MackeyFunctor, data: WeylSheafData, target_secs, transport=None):
    """Matrices of M(H) -> (target sections)(H), m -> (coords of e_L R^H_L m)_L.

    transport, if given, maps each L to a matrix F_L -> F'_L applied after
    taking coordinates (used when the target sheaf is built from a family).
    """
    maps = {}
    for h in M.domain:
        S = target_secs[h]
        blocks = []
        for L in S.points:
            v = data.coords[L].of(la.chain(data.projectors[L], M.R(h, L)))
            if transport is not None:
                v = la.mul(transport[L], v)
            blocks.append(v)
        big = la.vstack(*blocks) if blocks else la.zeros(0, M.dims[h])
        maps[h] = S.coords.exact(big)
    return maps


def roundtrip_functor(M: MackeyFunctor) -> RoundTrip:
    """rebuild(split(M)) with an explicit natural isomorphism from M."""
    G, lat = M.group, M.lattice
    data = weyl_sheaf(M)
    fam = family_from_sheaf(G, data.sheaf)
    target_sheaf = sheaf_from_family(fam)
    N, secs = mackey_from_sheaf(target_sheaf)
    cl = class_transports(G)
    # F_L = e_L M(L) -> V_K via C_{c_L^-1}, in coordinates
    transport = {}
    for L in range(len(lat)):
        K = lat.reps[lat.class_of[L]]
        c_inv = G.inv[cl[L]]
        transport[L] = data.coords[K].exact(la.mul(M.C(c_inv, L), data.bases[L]))
    out = RoundTrip()
    try:
        maps = sheaf_section_iso(M, data, secs, transport)
    except ValueError as exc:
        out.problems.append(f"section map failed: {exc}")
        return out
    phi = MackeyMorphism(M, N, maps)
    out.functor_iso = phi
    for v in phi.violations():
        out.problems.append(f"{v.label} at {v.witness}")
    for h in M.domain:
        if not la.is_invertible(maps[h]):
            out.problems.append(f"map at {h} is not invertible")
    return out


def roundtrip_family(family: WeylModuleFamily) -> RoundTrip:
    """split(rebuild(f)) with explicit intertwining isomorphisms to f."""
    sheaf = sheaf_from_family(family)
    M, secs = mackey_from_sheaf(sheaf)
    back = weyl_sheaf(M)
    out = RoundTrip(family_iso={})
    for k, mod in sorted(family.modules.items()):
        S = secs[k]
        # top piece of M(K), read off at the point K of the sections
        psi = S.component(la.mul(S.basis, back.bases[k]), k)
        out.family_iso[k] = psi
        if not la.is_invertible(psi):
            out.problems.append(f"class {k}: comparison is not invertible")
            continue
        for w in range(mod.weyl.n):
            n = mod.lift[w]
            lhs = la.mul(psi, back.sheaf.act(n, k))
            rhs = la.mul(mod.action[w], psi)
            if not la.equal(lhs, rhs):
                out.problems.append(f"class {k}: comparison does not intertwine element {n}")
    return out


def family_isomorphic(f1: WeylModuleFamily, f2: WeylModuleFamily) -> bool:
    """Decide isomorphism of two families by character-free brute force:
    each module pair must admit an invertible intertwiner."""
    for k, m1 in f1.modules.items():
        m2 = f2.modules[k]
        if m1.dim != m2.dim:
            return False
        d = m1.dim
        if d == 0:
            continue
        # solve X m1(w) = m2(w) X for all w, then test for an invertible solution
        eqs = []
        for w in range(m1.weyl.n):
            A, B = la.entries(m1.action[w]), la.entries(m2.action[w])
            for i in range(d):
                for j in range(d):
                    row = [0] * (d * d)
                    for t in range(d):
                        row[i * d + t] += A[t][j]
                        row[t * d + j] -= B[i][t]
                    eqs.append(row)
        sol = la.nullspace(la.mat(eqs, (len(eqs), d * d)))
        if sol.shape[1] == 0:
            return False
        # a generic combination of the solution basis is invertible if any is
        rng = random.Random(0)
        found = False
        for _ in range(8):
            coeffs = la.mat([[rng.randint(-5, 5)] for _ in range(sol.shape[1])], (sol.shape[1], 1))
            x = la.entries(la.mul(sol, coeffs))
            X = la.mat([[x[i * d + j][0] for j in range(d)] for i in range(d)], (d, d))
            if la.is_invertible(X):
                found = True
                break
        if not found:
            return False
    return True


# ---------------------------------------------------------------------------
# random data


def _perm_module(W: FiniteGroup, U):
    """Q[W/U] and its sum-zero submodule, as lists of matrices per element."""
    cos = transversal(W, W.full(), U)
    index = {}
    for i, c in enumerate(cos):
        for u in U.members:
            index[W.table[c][u]] = i
    n = len(cos)
    perm = []
    for w in range(W.n):
        rows = [[0] * n for _ in range(n)]
        for i, c in enumerate(cos):
            rows[index[W.table[w][c]]][i] = 1
        perm.append(la.mat(rows, (n, n)))
    if n == 1:
        return perm, None
    B = la.mat([[1 if i == j else (-1 if i == n - 1 else 0) for j in range(n - 1)] for i in range(n)], (n, n - 1))
    co = la.Coordinates(B)
    zero_sum = [co.exact(la.mul(p, B)) for p in perm]
    return perm, zero_sum


def _blocks(W: FiniteGroup, max_dim):
    out = []
    for U in W.lattice().subgroups:
        if W.n // U.order > max_dim + 1:
            continue
        perm, zs = _perm_module(W, U)
        if perm[0].shape[0] <= max_dim:
            out.append(perm)
        if zs is not None and zs[0].shape[0] <= max_dim:
            out.append(zs)
    return out


def random_module(rng: random.Random, G, k, max_dim=3) -> WeylModule:
    W, proj, lift = weyl_data(G, k)
    target = rng.randint(0, max_dim)
    blocks = _blocks(W, max_dim)
    chosen = []
    size = 0
    while size < target:
        fits = [b for b in blocks if b[0].shape[0] <= target - size]
        b = rng.choice(fits)
        chosen.append(b)
        size += b[0].shape[0]
    if size == 0:
        return WeylModule(k, W, proj, lift, [la.zeros(0, 0) for _ in range(W.n)])
    mats = [la.block_diag([b[w] for b in chosen]) for w in range(W.n)]
    while True:
        P = la.mat([[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)], (size, size))
        if la.is_invertible(P):
            break
    Pi = la.inverse(P)
    return WeylModule(k, W, proj, lift, [la.chain(P, m, Pi) for m in mats])


def random_family(G: FiniteGroup, seed=0, max_dim=3) -> WeylModuleFamily:
    rng = random.Random(seed)
    lat = G.lattice()
    return WeylModuleFamily(G, [random_module(rng, G, k, max_dim) for k in lat.reps])


# ---------------------------------------------------------------------------
# inflation


def inflate(Mbar: MackeyFunctor, G: FiniteGroup, pi) -> MackeyFunctor:
    """Pull a functor over Q = G/N back to the subgroups of G containing N.

    pi maps elements of G onto elements of Q.  M(K) := Mbar(K/N), with all
    structure maps transported along K -> K/N.
    """
    Q = Mbar.group
    latq, lat = Q.lattice(), G.lattice()
    N = G.subgroup([g for g in range(G.n) if pi[g] == Q.identity], check=False)
    if not is_normal(G, N):
        raise NotNormal("kernel is not normal")
    if len({pi[g] for g in range(G.n)}) != Q.n:
        raise NotNormal("map is not onto the quotient")
    for a in G.generators():
        for b in G.generators():
            if pi[G.table[a][b]] != Q.table[pi[a]][pi[b]]:
                raise NotNormal("map is not a homomorphism")
    dom = [h for h in range(len(lat)) if N <= lat[h]]
    img = {h: latq.index(Q.subgroup({pi[a] for a in lat[h].members}, check=False)) for h in dom}
    if set(Mbar.domain) != set(range(len(latq))):
        raise InvalidInput("inflation needs a functor on every subgroup of the quotient")
    dims = {h: Mbar.dims[img[h]] for h in dom}
    res, ind, conj = {}, {}, {}
    dset = set(dom)
    for h in dom:
        for k in lat.below(h):
            if k in dset:
                res[(h, k)] = Mbar.R(img[h], img[k])
                ind[(h, k)] = Mbar.I(img[h], img[k])
        for g in G.generators():
            conj[(g, h)] = Mbar.C(pi[g], img[h])
    return MackeyFunctor(G, dims, res, ind, conj, domain=dom, name=f"inflate({Mbar.name})")


def restrict_domain(M: MackeyFunctor, domain) -> MackeyFunctor:
    d = set(domain)
    dims = {h: M.dims[h] for h in d}
    res = {p: m for p, m in M.res.items() if p[0] in d and p[1] in d}
    ind = {p: m for p, m in M.ind.items() if p[0] in d and p[1] in d}
    conj = {p: m for p, m in M.conj.items() if p[1] in d}
    return MackeyFunctor(M.group, dims, res, ind, conj, domain=sorted(d), name=M.name)


def same_data(A: MackeyFunctor, B: MackeyFunctor) -> bool:
    """Literal equality of dimensions and structure matrices."""
    if A.domain != B.domain or A.dims != B.dims:
        return False
    for p in A.pairs():
        if not (la.equal(A.R(*p), B.R(*p)) and la.equal(A.I(*p), B.I(*p))):
            return False
    for g in A.group.generators():
        for h in A.domain:
            if not la.equal(A.C(g, h), B.C(g, h)):
                return False
    return True


# ---------------------------------------------------------------------------
# products


def mackey_product(functors) -> tuple:
    """Componentwise product, with its projection morphisms."""
    functors = list(functors)
    if not functors:
        raise InvalidInput("product of an empty list")
    G = functors[0].group
    dom = functors[0].domain
    for F in functors:
        if F.group is not G or F.domain != dom:
            raise GroupMismatch("product of functors over different groups")
    dims = {h: sum(F.dims[h] for F in functors) for h in dom}
    P0 = functors[0]
    res = {p: la.block_diag([F.R(*p) for F in functors]) for p in P0.pairs()}
    ind = {p: la.block_diag([F.I(*p) for F in functors]) for p in P0.pairs()}
    conj = {(g, h): la.block_diag([F.C(g, h) for F in functors]) for g in G.generators() for h in dom}
    P = MackeyFunctor(G, dims, res, ind, conj, domain=dom, name="x".join(F.name for F in functors))
    projections = []
    for i, F in enumerate(functors):
        maps = {}
        for h in dom:
            before = sum(E.dims[h] for E in functors[:i])
            maps[h] = la.rows_of(la.eye(dims[h]), range(before, before + F.dims[h]))
        projections.append(MackeyMorphism(P, F, maps))
    return P, projections


def product_universal(P, projections, cone):
    """The map into the product induced by a cone of morphisms C -> M_i,
    with a check that it is a morphism and factors the cone."""
    C = cone[0].source
    maps = {h: la.vstack(*[f.maps[h] for f in cone]) for h in C.domain}
    u = MackeyMorphism(C, P, maps)
    ok = u.is_morphism() and all(
        all(la.equal(x, y) for x, y in zip(p.compose(u).maps.values(), f.maps.values()))
        for p, f in zip(projections, cone))
    return u, ok


# ---------------------------------------------------------------------------
# mutation catalogue for testing the checker


def mutation_catalogue(M: MackeyFunctor, limit=None):
    """Single-entry perturbations of M that no Mackey functor can absorb.

    Each item is (description, mutated functor).  Entries are chosen where
    some axiom pins the value: identity matrices, inner conjugations, and
    induction to the trivial subgroup (fixed by the double coset formula).
    """
    lat = M.lattice
    out = []

    def bump(m, i, j):
        return la.with_entry(m, i, j, la.get(m, i, j) + 1)

    for h in M.domain:
        d = M.dims[h]
        if d == 0:
            continue
        out.append((f"R[{h},{h}] entry (0,0)", M.replace(res={(h, h): bump(M.R(h, h), 0, 0)})))
        out.append((f"I[{h},{h}] entry ({d - 1},{d - 1})", M.replace(ind={(h, h): bump(M.I(h, h), d - 1, d - 1)})))
    triv = lat.index(M.group.trivial())
    for h in M.domain:
        if h == triv or triv not in M.domain or M.dims[triv] == 0 or M.dims[h] == 0:
            continue
        out.append((f"I[{h},{triv}] entry (0,0)", M.replace(ind={(h, triv): bump(M.I(h, triv), 0, 0)})))
    for g in M.group.generators():
        for h in M.domain:
            if g in lat[h] and M.dims[h]:
                out.append((f"C[{g},{h}] entry (0,0)", M.replace(conj={(g, h): bump(M.conj[(g, h)], 0, 0)})))
    return out[:limit] if limit else out


# ---------------------------------------------------------------------------
# JSON


def to_json(M: MackeyFunctor):
    G = M.group
    return {
        "group": G.name,
        "cayley": G.table,
        "domain": M.domain,
        "subgroups": [list(M.lattice[h].members) for h in M.domain],
        "dims": {str(h): M.dims[h] for h in M.domain},
        "res": [{"H": h, "K": k, "matrix": la.to_strings(M.R(h, k))} for h, k in M.pairs()],
        "ind": [{"H": h, "K": k, "matrix": la.to_strings(M.I(h, k))} for h, k in M.pairs()],
        "conj": [{"g": g, "H": h, "matrix": la.to_strings(M.conj[(g, h)])}
                 for g in G.generators() for h in M.domain],
        "name": M.name,
    }


def from_json(data, group: FiniteGroup = None) -> MackeyFunctor:
    try:
        if group is None:
            if "cayley" in data:
                group = FiniteGroup(data["cayley"], data.get("group", "G"))
            else:
                group = load_group(data["group"])
        lat = group.lattice()
        for h, members in zip(data["domain"], data["subgroups"]):
            if tuple(lat[h].members) != tuple(members):
                raise InvalidInput("subgroup numbering does not match the group")
        dims = {int(h): int(d) for h, d in data["dims"].items()}

        def m(entry, shape):
            return la.from_strings(entry["matrix"], shape)
        res = {(e["H"], e["K"]): m(e, (dims[e["K"]], dims[e["H"]])) for e in data["res"]}
        ind = {(e["H"], e["K"]): m(e, (dims[e["H"]], dims[e["K"]])) for e in data["ind"]}
        conj = {(e["g"], e["H"]): m(e, (dims[lat.conj_index(e["g"], e["H"])], dims[e["H"]])) for e in data["conj"]}
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidInput(f"malformed Mackey functor file: {exc}") from None
    return MackeyFunctor(group, dims, res, ind, conj, domain=data["domain"], name=data.get("name", "M"))
