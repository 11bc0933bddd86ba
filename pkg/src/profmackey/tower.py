"""Profinite groups as towers of finite quotients G_0 <- G_1 <- ... <- G_d.

Level i is a FiniteGroup G_i = G/N_i; maps[i] sends elements of G_{i+1}
onto G_i.  Closed subgroups are handled as threads: one lattice index per
level, each the image of the next.  A thread's level-i entry is the image
N_iK/N_i, and the open subgroup N_iK is its preimage in G.

Level i+1 sees N_iK as the preimage of the level-i entry, so structure
maps between levels are computed inside a single finite level.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from . import linalg as la
from .burnside import burnside_ring, idempotent, image_index, inflate_element, multiply
from .errors import (DepthExceeded, IncompatibleLevels, IncompatibleThread, InvalidInput,
                     UnknownGroup)
from .finite_group import FiniteGroup, builtin, direct_product, normalizer, subgroup_label, zp_level
from .mackey import (axiom_check, burnside_functor, fixed_point_functor, idempotent_projector, inflate,
                     mackey_product, restrict_domain, roundtrip_functor, same_data, weyl_sheaf, zero_functor)
from .sheaves import mackey_from_sheaf, mackey_from_sheaf_level

__all__ = [
    "TowerGroup", "LevelSpace", "TowerMackey", "Thread", "level_space", "burnside_colimit_check",
    "threads", "parse_thread", "weyl_stalk", "mackey_from_sheaf_level", "roundtrip_certificate",
    "tower_product", "load_tower", "zp_tower", "trivial_tower", "product_tower", "tower_functor",
    "mackey_product", "stalk_product_check", "normalizer_monotonicity", "fiber_law_check",
]


class TowerGroup:
    def __init__(self, levels, maps, name="G", kernels=None):
        self.levels = list(levels)
        self.maps = [list(m) for m in maps]
        self.name = name
        if not self.levels:
            raise InvalidInput("a tower needs at least one level")
        if len(self.maps) != len(self.levels) - 1:
            raise InvalidInput("one surjection per pair of consecutive levels")
        self.kernels = kernels or [f"N{i}" for i in range(len(self.levels))]
        self._validate()

    @property
    def depth(self):
        return len(self.levels) - 1

    def _validate(self):
        for i, pi in enumerate(self.maps):
            A, B = self.levels[i + 1], self.levels[i]
            if len(pi) != A.n or any(not 0 <= x < B.n for x in pi):
                raise InvalidInput(f"map {i + 1} -> {i} has the wrong size or range")
            if len(set(pi)) != B.n:
                raise InvalidInput(f"map {i + 1} -> {i} is not surjective")
            for a in range(A.n):
                for b in range(A.n):
                    if pi[A.table[a][b]] != B.table[pi[a]][pi[b]]:
                        raise InvalidInput(f"map {i + 1} -> {i} is not a homomorphism")

    def check_level(self, i):
        if not 0 <= i <= self.depth:
            raise DepthExceeded(f"level {i} is beyond the tower depth {self.depth}")

    def truncate(self, depth):
        self.check_level(depth)
        return TowerGroup(self.levels[:depth + 1], self.maps[:depth], self.name, self.kernels[:depth + 1])

    def image(self, i, k):
        """Image at level i of subgroup k of level i+1."""
        return image_index(self.levels[i + 1], self.levels[i], self.maps[i], k)

    def preimage(self, i, k):
        """Lattice index at level i+1 of the preimage of subgroup k of level i."""
        A = self.levels[i + 1]
        members = [a for a in range(A.n) if self.maps[i][a] in self.levels[i].lattice()[k]]
        return A.lattice().index(A.subgroup(members, check=False))

    def kernel_at(self, i, k):
        """Lattice index at level i of the image of N_k (kernel of G_i -> G_min(i,k))."""
        m = min(i, k)
        G = self.levels[i]
        proj = list(range(G.n))
        for j in range(i - 1, m - 1, -1):
            proj = [self.maps[j][x] for x in proj]
        e = self.levels[m].identity
        return G.lattice().index(G.subgroup([a for a in range(G.n) if proj[a] == e], check=False))

    def to_json(self):
        return {"name": self.name, "depth": self.depth, "orders": [G.n for G in self.levels]}


def zp_tower(p, depth) -> TowerGroup:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise UnknownGroup(f"{p} is not a prime")
    levels = [zp_level(p, i) for i in range(depth + 1)]
    maps = [[x % p**i for x in range(p**(i + 1))] for i in range(depth)]
    return TowerGroup(levels, maps, name=f"Z_{p}", kernels=[f"{p}^{i}Z_{p}" for i in range(depth + 1)])


def trivial_tower(depth=1) -> TowerGroup:
    one = builtin("C1")
    return TowerGroup([one] * (depth + 1), [[0]] * depth, name="trivial")


def product_tower(A: TowerGroup, B: TowerGroup) -> TowerGroup:
    if A.depth != B.depth:
        raise InvalidInput("product towers need equal depths")
    levels = [direct_product(a, b) for a, b in zip(A.levels, B.levels)]
    maps = []
    for i in range(A.depth):
        nb, nb_low = B.levels[i + 1].n, B.levels[i].n
        maps.append([A.maps[i][x // nb] * nb_low + B.maps[i][x % nb] for x in range(levels[i + 1].n)])
    return TowerGroup(levels, maps, name=f"{A.name}x{B.name}")


def _tower_from_text(source: str, depth) -> TowerGroup:
    source = source.strip()
    if "x" in source:
        parts = [_tower_from_text(s, depth) for s in source.split("x")]
        T = parts[0]
        for P in parts[1:]:
            T = product_tower(T, P)
        return T
    if source == "trivial":
        return trivial_tower(depth)
    if source.startswith("Zp:"):
        try:
            return zp_tower(int(source[3:]), depth)
        except ValueError:
            raise UnknownGroup(f"bad prime in {source!r}") from None
    if source.startswith("Z_"):
        try:
            return zp_tower(int(source[2:]), depth)
        except ValueError:
            raise UnknownGroup(f"bad prime in {source!r}") from None
    raise UnknownGroup(f"unknown tower {source!r}")


def tower_from_json(data, depth=None) -> TowerGroup:
    try:
        if "builtin" in data:
            kind = data["builtin"]
            d = depth if depth is not None else data.get("depth", 1)
            if kind == "Zp":
                return zp_tower(int(data["p"]), d)
            if kind == "trivial":
                return trivial_tower(d)
            if kind == "product":
                parts = [tower_from_json(f, d) for f in data["factors"]]
                T = parts[0]
                for P in parts[1:]:
                    T = product_tower(T, P)
                return T
            raise UnknownGroup(f"unknown built-in tower {kind!r}")
        levels = []
        for j, lv in enumerate(data["levels"]):
            if "cayley" in lv:
                levels.append(FiniteGroup(lv["cayley"], lv.get("name", f"G{j}")))
            else:
                levels.append(builtin(lv["group"]))
        T = TowerGroup(levels, data["maps"], name=data.get("name", "G"))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidInput(f"malformed tower descriptor: {exc}") from None
    return T.truncate(depth) if depth is not None else T


def load_tower(source: str, depth=None) -> TowerGroup:
    """A short name (Zp:2, Z_3, trivial, Zp:2xZp:3) or a JSON descriptor path."""
    if os.path.isfile(source):
        with open(source) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"tower file is not JSON: {exc}") from None
        return tower_from_json(data, depth)
    return _tower_from_text(source, 1 if depth is None else depth)


# ---------------------------------------------------------------------------
# the space of subgroups, level by level


@dataclass
class LevelSpace:
    level: int
    group: FiniteGroup
    points: list                  # labels of subgroups of G_i
    conj: list                    # conj[g][k] = index of g K g^-1
    connect: list | None          # point -> image at level i-1 (None at level 0)

    @property
    def size(self):
        return len(self.points)

    def fixed_points(self):
        return [k for k in range(self.size) if all(row[k] == k for row in self.conj)]

    def to_json(self):
        return {"level": self.level, "group": self.group.name, "points": self.points,
                "fixed_points": self.fixed_points(), "connect": self.connect}


def level_space(T: TowerGroup, i) -> LevelSpace:
    T.check_level(i)
    G = T.levels[i]
    lat = G.lattice()
    labels = [subgroup_label(G, lat[k]) for k in range(len(lat))]
    conj = [[lat.conj_index(g, k) for k in range(len(lat))] for g in range(G.n)]
    connect = None if i == 0 else [T.image(i - 1, k) for k in range(len(lat))]
    return LevelSpace(i, G, labels, conj, connect)


def fiber(T: TowerGroup, i, k):
    """Points of level i+1 lying over point k of level i."""
    return [l for l in range(len(T.levels[i + 1].lattice())) if T.image(i, l) == k]


def fiber_law_check(T: TowerGroup, i) -> bool:
    """p^-1(K) = {L : L N_i = preimage of K}, by enumeration of products LN."""
    A = T.levels[i + 1]
    lat = A.lattice()
    N = [a for a in range(A.n) if T.maps[i][a] == T.levels[i].identity]
    for k in range(len(T.levels[i].lattice())):
        pre = lat[T.preimage(i, k)]
        direct = [l for l in range(len(lat))
                  if A.closure(list(lat[l].members) + N) == tuple(pre.members)]
        if sorted(direct) != fiber(T, i, k):
            return False
    return True


def connecting_equivariant(T: TowerGroup, i) -> bool:
    A = T.levels[i + 1]
    lat = A.lattice()
    latb = T.levels[i].lattice()
    for g in range(A.n):
        for l in range(len(lat)):
            if T.image(i, lat.conj_index(g, l)) != latb.conj_index(T.maps[i][g], T.image(i, l)):
                return False
    return True


# ---------------------------------------------------------------------------
# Burnside rings along the tower


def burnside_colimit_check(T: TowerGroup, depth=None) -> dict:
    depth = T.depth if depth is None else depth
    T.check_level(depth)
    report = []
    ok = True
    for i in range(depth):
        G, H = T.levels[i], T.levels[i + 1]
        A, B = burnside_ring(G), burnside_ring(H)
        pi = T.maps[i]
        infl = [inflate_element(A.basis(c), H, pi) for c in range(A.rank)]
        m = la.mat([list(x.coeffs) for x in infl], (A.rank, B.rank))
        injective = la.rank(m) == A.rank
        unital = inflate_element(A.one(), H, pi) == B.one()
        mult = all(inflate_element(multiply(A.basis(a), A.basis(b)), H, pi) == infl[a] * infl[b]
                   for a in range(A.rank) for b in range(a, A.rank))
        idem = True
        for c, r in enumerate(A.reps):
            e = inflate_element(idempotent(A, r), H, pi)
            over = {B.class_of(l) for l in fiber(T, i, r)}
            over |= {B.class_of(l) for r2 in A.classes[c] for l in fiber(T, i, r2)}
            target = B.zero()
            for cb in sorted(over):
                target = target + idempotent(B, B.reps[cb])
            if not (e.is_idempotent() and e == target):
                idem = False
        level_ok = injective and unital and mult and idem
        ok = ok and level_ok
        report.append({"from": i, "to": i + 1, "ranks": [A.rank, B.rank], "injective": injective,
                       "unital": unital, "multiplicative": mult, "idempotents_to_idempotents": idem,
                       "ok": level_ok})
    return {"tower": T.name, "depth": depth, "levels": report, "ok": ok,
            "ranks": [burnside_ring(T.levels[i]).rank for i in range(depth + 1)]}


# ---------------------------------------------------------------------------
# threads


@dataclass(frozen=True)
class Thread:
    indices: tuple   # lattice index at each level 0..d
    label: str = ""

    @property
    def depth(self):
        return len(self.indices) - 1


def check_thread(T: TowerGroup, indices) -> Thread:
    indices = tuple(indices)
    if not indices:
        raise IncompatibleThread("empty thread")
    T.check_level(len(indices) - 1)
    for i, k in enumerate(indices):
        if not 0 <= k < len(T.levels[i].lattice()):
            raise IncompatibleThread(f"level {i} has no subgroup {k}")
    for i in range(len(indices) - 1):
        if T.image(i, indices[i + 1]) != indices[i]:
            raise IncompatibleThread(f"level {i + 1} entry does not map onto the level {i} entry")
    return Thread(indices)


def thread_from_top(T: TowerGroup, k, depth=None) -> Thread:
    depth = T.depth if depth is None else depth
    T.check_level(depth)
    if not 0 <= k < len(T.levels[depth].lattice()):
        raise IncompatibleThread(f"level {depth} has no subgroup {k}")
    idx = [k]
    for i in range(depth - 1, -1, -1):
        idx.append(T.image(i, idx[-1]))
    return Thread(tuple(reversed(idx)))


def threads(T: TowerGroup, depth=None):
    """All threads visible at the given depth, one per subgroup of G_depth."""
    depth = T.depth if depth is None else depth
    return [thread_from_top(T, k, depth) for k in range(len(T.levels[depth].lattice()))]


def parse_thread(T: TowerGroup, text: str, depth=None) -> Thread:
    """'e' (trivial subgroup), an integer k (the open subgroup N_k), or a
    comma-separated list of lattice indices, one per level."""
    depth = T.depth if depth is None else depth
    T.check_level(depth)
    text = text.strip()
    if text == "e":
        return Thread(tuple(T.levels[i].lattice().index(T.levels[i].trivial()) for i in range(depth + 1)), "e")
    if "," in text:
        try:
            idx = [int(x) for x in text.split(",")]
        except ValueError:
            raise IncompatibleThread(f"bad thread {text!r}") from None
        if len(idx) != depth + 1:
            raise IncompatibleThread(f"thread needs {depth + 1} entries")
        t = check_thread(T, idx)
        return Thread(t.indices, text)
    try:
        k = int(text)
    except ValueError:
        raise IncompatibleThread(f"bad thread {text!r}") from None
    if k < 0:
        raise IncompatibleThread("open subgroup index must be non-negative")
    return Thread(tuple(T.kernel_at(i, k) for i in range(depth + 1)), f"N{k}")


def normalizer_monotonicity(T: TowerGroup, thread: Thread) -> bool:
    """The image of N_{G_{i+1}}(K_{i+1}) lies in N_{G_i}(K_i) along the thread."""
    for i in range(thread.depth):
        A, B = T.levels[i + 1], T.levels[i]
        na = normalizer(A, A.lattice()[thread.indices[i + 1]])
        nb = normalizer(B, B.lattice()[thread.indices[i]])
        if any(T.maps[i][a] not in nb for a in na.members):
            return False
    return True


# ---------------------------------------------------------------------------
# Mackey functors along the tower


class TowerMackey:
    """One Mackey functor per level, compatible under inflation."""

    def __init__(self, tower: TowerGroup, levels, name="M", check=True):
        self.tower = tower
        self.levels = list(levels)
        self.name = name
        if len(self.levels) != len(tower.levels):
            raise IncompatibleLevels("one Mackey functor per tower level")
        for i, M in enumerate(self.levels):
            if M.group is not tower.levels[i]:
                raise IncompatibleLevels(f"level {i} functor is over a different group")
        if check:
            bad = self.compatibility_violations()
            if bad:
                raise IncompatibleLevels(f"level {bad[0]} is not the inflation of level {bad[0] - 1}")

    @property
    def depth(self):
        return self.tower.depth

    def compatibility_violations(self):
        """Levels i+1 whose values on subgroups containing N_i differ from level i."""
        T = self.tower
        bad = []
        for i in range(T.depth):
            up = inflate(self.levels[i], T.levels[i + 1], T.maps[i])
            if not same_data(up, restrict_domain(self.levels[i + 1], up.domain)):
                bad.append(i + 1)
        return bad

    def truncate(self, depth):
        return TowerMackey(self.tower.truncate(depth), self.levels[:depth + 1], self.name, check=False)


def tower_functor(T: TowerGroup, name: str) -> TowerMackey:
    """Built-in tower functors.

    zp / fixed: Q at every open subgroup, restriction and conjugation the
    identity, induction multiplication by the index.  zero: the zero functor.
    burnside: the Burnside functor, available only on the trivial tower since
    A(H/N) is not A(H) in general.
    """
    if name in ("zp", "fixed", "fixed-point", "constant"):
        return TowerMackey(T, [fixed_point_functor(G, name="zp") for G in T.levels], name="zp")
    if name == "zero":
        return TowerMackey(T, [zero_functor(G) for G in T.levels], name="zero")
    if name == "burnside":
        if any(G.n != 1 for G in T.levels):
            raise IncompatibleLevels("the Burnside tower functor is only level-compatible on the trivial tower")
        return TowerMackey(T, [burnside_functor(G) for G in T.levels], name="burnside")
    raise InvalidInput(f"unknown tower functor {name!r}")


def tower_product(functors) -> TowerMackey:
    functors = list(functors)
    if not functors:
        raise InvalidInput("product of an empty list")
    T = functors[0].tower
    if any(F.tower is not T for F in functors):
        raise IncompatibleLevels("product of tower functors over different towers")
    levels = [mackey_product([F.levels[i] for F in functors])[0] for i in range(T.depth + 1)]
    return TowerMackey(T, levels, name="x".join(F.name for F in functors))


# ---------------------------------------------------------------------------
# stalks


@dataclass
class Stalk:
    thread: Thread
    dims: list
    transitions: list = field(repr=False)
    bases: list = field(repr=False)

    @property
    def stabilized(self):
        """Last transition is an isomorphism (so the truncated colimit has settled)."""
        if not self.transitions:
            return False
        t = self.transitions[-1]
        return t.shape[0] == t.shape[1] and la.is_invertible(t)

    @property
    def stabilized_from(self):
        """Least level from which every later transition is an isomorphism."""
        s = len(self.dims) - 1
        for i in range(len(self.transitions) - 1, -1, -1):
            t = self.transitions[i]
            if t.shape[0] == t.shape[1] and la.is_invertible(t):
                s = i
            else:
                break
        return s if self.stabilized else None

    @property
    def dim(self):
        return self.dims[-1]

    def to_json(self):
        return {"thread": list(self.thread.indices), "label": self.thread.label, "dims": self.dims,
                "transitions": [la.to_strings(t) for t in self.transitions],
                "stabilized": self.stabilized, "stabilized_from": self.stabilized_from,
                "stalk_dim": self.dim}


def weyl_stalk(TM: TowerMackey, thread: Thread, depth=None) -> Stalk:
    """Truncated colimit of e_{K_i} M_i(K_i) along the thread.

    The map from level i to level i+1 restricts from the preimage of K_i to
    K_{i+1} inside level i+1 and then projects with the top idempotent.
    """
    T = TM.tower
    depth = thread.depth if depth is None else depth
    T.check_level(depth)
    if thread.depth < depth:
        raise IncompatibleThread("thread is shorter than the requested depth")
    check_thread(T, thread.indices[:depth + 1])
    dims, bases, trans = [], [], []
    for i in range(depth + 1):
        M = TM.levels[i]
        k = thread.indices[i]
        B = la.column_basis(idempotent_projector(M, k, k))
        bases.append(B)
        dims.append(B.shape[1])
        if i:
            M1 = TM.levels[i]
            up = T.preimage(i - 1, thread.indices[i - 1])
            P = idempotent_projector(M1, k, k)
            img = la.chain(P, M1.R(up, k), bases[i - 1])
            trans.append(la.Coordinates(B).exact(img))
    return Stalk(thread, dims, trans, bases)


def stalk_product_check(functors, thread, depth=None) -> bool:
    """The stalk of a product has the summed dimensions and block transitions."""
    P = tower_product(functors)
    sp = weyl_stalk(P, thread, depth)
    parts = [weyl_stalk(F, thread, depth) for F in functors]
    if sp.dims != [sum(s.dims[i] for s in parts) for i in range(len(sp.dims))]:
        return False
    return all(la.rank(t) == sum(la.rank(s.transitions[i]) for s in parts) for i, t in enumerate(sp.transitions))


# ---------------------------------------------------------------------------
# round trip certificates


def _sheaf_roundtrip(sheaf):
    """Weyl(Mackey(F)) compared with F pointwise, with intertwining checks."""
    N, secs = mackey_from_sheaf(sheaf)
    back = weyl_sheaf(N)
    G, lat = sheaf.group, sheaf.lattice
    isos, problems = {}, []
    for L in range(len(lat)):
        S = secs[L]
        psi = S.component(la.mul(S.basis, back.bases[L]), L)
        isos[L] = psi
        if not la.is_invertible(psi):
            problems.append(f"point {L}: comparison is not invertible")
    for g in range(G.n):
        for L in range(len(lat)):
            if L in isos and la.is_invertible(isos[L]):
                gL = lat.conj_index(g, L)
                if not la.equal(la.mul(isos[gL], back.sheaf.act(g, L)), la.mul(sheaf.act(g, L), isos[L])):
                    problems.append(f"point {L}: comparison does not commute with {g}")
    return isos, problems


def roundtrip_certificate(TM: TowerMackey, depth=None) -> dict:
    T = TM.tower
    depth = T.depth if depth is None else depth
    T.check_level(depth)
    if depth < 1:
        raise DepthExceeded("round trip certificates need depth at least 1")
    rows = []
    all_ok = True
    for i in range(depth + 1):
        M = TM.levels[i]
        ax = axiom_check(M)
        data = weyl_sheaf(M)
        # the level sheaf is the last stage of the stalks of all level-i threads
        stalk_dims = [weyl_stalk(TM, t, i).dim for t in threads(T, i)]
        dims_agree = stalk_dims == data.sheaf.dims
        rt = roundtrip_functor(M)
        isos, sheaf_problems = _sheaf_roundtrip(data.sheaf)
        unstable = []
        if i:
            for t in threads(T, i):
                s = weyl_stalk(TM, t, i)
                if not s.stabilized:
                    unstable.append(t.indices[-1])
        functor_maps = rt.functor_iso.maps if rt.functor_iso else {}
        ok = ax.ok and dims_agree and rt.ok and not sheaf_problems
        all_ok = all_ok and ok
        rows.append({
            "level": i,
            "group": M.group.name,
            "dims": [M.dims[h] for h in M.domain],
            "stalk_dims": stalk_dims,
            "axioms_ok": ax.ok,
            "mackey_weyl_iso": {str(h): la.to_strings(m) for h, m in sorted(functor_maps.items())},
            "mackey_weyl_ok": rt.ok,
            "weyl_mackey_iso": {str(L): la.to_strings(m) for L, m in sorted(isos.items())},
            "weyl_mackey_ok": not sheaf_problems,
            "problems": rt.problems + sheaf_problems + ([] if dims_agree else ["stalk dimensions disagree"]),
            "stabilized": bool(i) and not unstable,
            "unstabilized_threads": unstable,
            "ok": ok,
        })
    return {"tower": T.name, "functor": TM.name, "depth": depth, "levels": rows, "ok": all_ok,
            "stabilized": all(r["stabilized"] for r in rows[1:])}


def level_sheaf_mackey(TM: TowerMackey, i, h):
    """Mackey(F)(H) at level i for F the Weyl sheaf of the level functor."""
    data = weyl_sheaf(TM.levels[i])
    return mackey_from_sheaf_level(data.sheaf, h)

