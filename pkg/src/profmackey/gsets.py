"""Finite G-sets stored as orbit multisets, and the category of spans.

A G-set is a vector of multiplicities indexed by the conjugacy classes of
subgroups; class c stands for one copy of G/H with H the canonical
representative of c.  Equivariant maps between orbits G/L -> G/K are given
by an element a with a^-1 L a <= K (the map eL -> aK); a is replaced by the
least element of aK.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import CompositionMismatch, GroupMismatch, InvalidAction, NotSubgroup
from .finite_group import FiniteGroup, Subgroup, double_cosets


class GSet:
    def __init__(self, group: FiniteGroup, counts):
        self.group = group
        lat = group.lattice()
        counts = tuple(int(c) for c in counts)
        if len(counts) != len(lat.classes) or any(c < 0 for c in counts):
            raise ValueError("orbit multiplicities must be non-negative, one per class")
        self.counts = counts

    @classmethod
    def empty(cls, group):
        return cls(group, [0] * len(group.lattice().classes))

    @classmethod
    def orbit(cls, group, sub_index, mult=1):
        """mult copies of G/H, H given by its lattice index."""
        lat = group.lattice()
        counts = [0] * len(lat.classes)
        counts[lat.class_of[sub_index]] += mult
        return cls(group, counts)

    def __eq__(self, other):
        return isinstance(other, GSet) and self.group is other.group and self.counts == other.counts

    def __hash__(self):
        return hash(self.counts)

    def __add__(self, other):
        _same(self, other)
        return GSet(self.group, [a + b for a, b in zip(self.counts, other.counts)])

    def __repr__(self):
        parts = [f"{m}[G/H{c}]" for c, m in enumerate(self.counts) if m]
        return "GSet(" + (" + ".join(parts) or "0") + ")"

    @property
    def size(self):
        lat = self.group.lattice()
        return sum(m * (self.group.n // lat[lat.reps[c]].order) for c, m in enumerate(self.counts))

    def orbits(self):
        """Class index of each orbit, in a fixed order."""
        out = []
        for c, m in enumerate(self.counts):
            out.extend([c] * m)
        return out


def _same(X, Y):
    if X.group is not Y.group:
        raise GroupMismatch("G-sets over different groups")


def orbit_decompose(group: FiniteGroup, action) -> GSet:
    """Orbit multiset of an explicit left action action[g][x] on range(m)."""
    n = group.n
    if len(action) != n:
        raise InvalidAction("action table needs one row per group element")
    m = len(action[0]) if n else 0
    for row in action:
        if len(row) != m or any(not (0 <= y < m) for y in row):
            raise InvalidAction("action rows must map the set to itself")
    e = group.identity
    if any(action[e][x] != x for x in range(m)):
        raise InvalidAction("identity does not act trivially")
    t = group.table
    for g in range(n):
        for h in range(n):
            gh = t[g][h]
            for x in range(m):
                if action[gh][x] != action[g][action[h][x]]:
                    raise InvalidAction(f"(gh)x != g(hx) for g={g}, h={h}, x={x}")
    lat = group.lattice()
    counts = [0] * len(lat.classes)
    seen = set()
    for x in range(m):
        if x in seen:
            continue
        seen.update(action[g][x] for g in range(n))
        stab = group.subgroup([g for g in range(n) if action[g][x] == x], check=False)
        counts[lat.class_of[lat.index(stab)]] += 1
    return GSet(group, counts)


def orbit_product(group, h, k) -> Counter:
    """G/H x G/K as a Counter over classes: orbits G/(H cap xKx^-1)."""
    lat = group.lattice()
    H, K = lat[h], lat[k]
    out = Counter()
    for x, _ in double_cosets(group, H, K):
        inter = lat.intersect(h, lat.conj_index(x, k))
        out[lat.class_of[inter]] += 1
    return out


def gset_product(X: GSet, Y: GSet) -> GSet:
    _same(X, Y)
    G = X.group
    lat = G.lattice()
    counts = [0] * len(lat.classes)
    for a, ma in enumerate(X.counts):
        if not ma:
            continue
        for b, mb in enumerate(Y.counts):
            if not mb:
                continue
            for c, m in orbit_product(G, lat.reps[a], lat.reps[b]).items():
                counts[c] += ma * mb * m
    return GSet(G, counts)


def pullback_orbits(group, H: Subgroup, K: Subgroup, J: Subgroup) -> GSet:
    """Pullback of G/H -> G/J <- G/K: orbits G/(H cap xKx^-1), x in H\\J/K."""
    if not (H <= J and K <= J):
        raise NotSubgroup("pullback needs H, K <= J")
    lat = group.lattice()
    h, k = lat.index(H), lat.index(K)
    counts = [0] * len(lat.classes)
    for x, _ in double_cosets(group, H, K, within=J):
        inter = lat.intersect(h, lat.conj_index(x, k))
        counts[lat.class_of[inter]] += 1
    return GSet(group, counts)


def fixed_count_orbit(group, h, k, ambient=None) -> int:
    """|(A/H)^K| for subgroups K, H of A (A = ambient subgroup, default G)."""
    lat = group.lattice()
    elems = ambient.members if ambient is not None else range(group.n)
    inv = group.inv
    hits = sum(1 for g in elems if lat.leq(lat.conj_index(inv[g], k), h))
    return hits // lat[h].order


def fixed_count(X: GSet, K: Subgroup) -> int:
    lat = X.group.lattice()
    k = lat.index(K)
    return sum(m * fixed_count_orbit(X.group, lat.reps[c], k) for c, m in enumerate(X.counts) if m)


# ---------------------------------------------------------------------------
# spans


def canon(group, a, sub: Subgroup):
    """Least element of the left coset a*sub."""
    t = group.table
    return min(t[a][s] for s in sub.members)


def is_map(group, L: Subgroup, a, K: Subgroup) -> bool:
    """Whether eL -> aK defines an equivariant map G/L -> G/K."""
    inv = group.inv
    return all(group.conj(inv[a], l) in K for l in L.members)


@dataclass(frozen=True)
class Span:
    """source <- apex -> target with per-orbit leg data.

    apex[i] is the class of the i-th apex orbit; left[i] = (p, u) sends its
    base point to u*H_p in orbit p of the source, right[i] = (q, v) likewise.
    """

    source: GSet
    target: GSet
    apex: tuple
    left: tuple
    right: tuple

    def __post_init__(self):
        G = self.source.group
        lat = G.lattice()
        if self.target.group is not G:
            raise GroupMismatch("span legs over different groups")
        so, to = self.source.orbits(), self.target.orbits()
        if not (len(self.apex) == len(self.left) == len(self.right)):
            raise ValueError("one leg entry per apex orbit")
        for c, (p, u), (q, v) in zip(self.apex, self.left, self.right):
            L = lat[lat.reps[c]]
            if not (0 <= p < len(so) and 0 <= q < len(to)):
                raise ValueError("leg points to a missing orbit")
            if not is_map(G, L, u, lat[lat.reps[so[p]]]) or not is_map(G, L, v, lat[lat.reps[to[q]]]):
                raise ValueError("leg is not an equivariant map")

    @property
    def group(self):
        return self.source.group

    def apex_gset(self) -> GSet:
        counts = [0] * len(self.group.lattice().classes)
        for c in self.apex:
            counts[c] += 1
        return GSet(self.group, counts)

    def key(self):
        """Canonical form: spans are equivalent iff their keys are equal."""
        G = self.group
        lat = G.lattice()
        so, to = self.source.orbits(), self.target.orbits()
        t = G.table
        keys = []
        for c, (p, u), (q, v) in zip(self.apex, self.left, self.right):
            Hp = lat[lat.reps[so[p]]]
            Kq = lat[lat.reps[to[q]]]
            best = None
            for n in _normalizer_elems(G, lat.reps[c]):
                cand = (canon(G, t[n][u], Hp), canon(G, t[n][v], Kq))
                if best is None or cand < best:
                    best = cand
            keys.append((c, p, q) + best)
        return (self.source.counts, self.target.counts, tuple(sorted(keys)))

    def equivalent(self, other) -> bool:
        return self.key() == other.key()


def _normalizer_elems(G, i):
    def compute():
        lat = G.lattice()
        return tuple(g for g in range(G.n) if lat.conj_index(g, i) == i)
    return G.memo(("normalizer", i), compute)


def identity_span(X: GSet) -> Span:
    e = X.group.identity
    orbs = X.orbits()
    return Span(X, X, tuple(orbs), tuple((i, e) for i in range(len(orbs))),
                tuple((i, e) for i in range(len(orbs))))


def _class_transport(G, sub_index):
    """(class, c) with c * S * c^-1 the class representative of S."""
    lat = G.lattice()
    cl = lat.class_of[sub_index]
    rep = lat.reps[cl]
    if rep == sub_index:
        return cl, G.identity
    for c in range(G.n):
        if lat.conj_index(c, sub_index) == rep:
            return cl, c
    raise AssertionError("class representative not reachable")


def span_compose(s2: Span, s1: Span) -> Span:
    """s2 after s1, via orbitwise pullbacks over the middle G-set."""
    if s1.group is not s2.group:
        raise GroupMismatch("spans over different groups")
    if s1.target.counts != s2.source.counts:
        raise CompositionMismatch("target of the first span differs from source of the second")
    G = s1.group
    lat = G.lattice()
    t, inv = G.table, G.inv
    mid = s1.target.orbits()
    apex, left, right = [], [], []
    for ca, (p, u), (j, a) in zip(s1.apex, s1.left, s1.right):
        li = lat.reps[ca]
        L = lat[li]
        for cb, (j2, b), (q, v) in zip(s2.apex, s2.left, s2.right):
            if j2 != j:
                continue
            mi = lat.reps[cb]
            M = lat[mi]
            J = lat[lat.reps[mid[j]]]
            # points (eL, yM) with y in a J b^-1, modulo the action of L
            binv = inv[b]
            ys = sorted({canon(G, t[t[a][x]][binv], M) for x in J.members})
            seen = set()
            for y in ys:
                if y in seen:
                    continue
                orbit = {canon(G, t[l][y], M) for l in L.members}
                seen |= orbit
                stab = lat.intersect(li, lat.conj_index(y, mi))
                cl, c = _class_transport(G, stab)
                apex.append(cl)
                left.append((p, canon(G, t[c][u], lat[lat.reps[s1.source.orbits()[p]]])))
                right.append((q, canon(G, t[t[c][y]][v], lat[lat.reps[s2.target.orbits()[q]]])))
    return Span(s1.source, s2.target, tuple(apex), tuple(left), tuple(right))


def transitive_span(group, h, l, u, k, v) -> Span:
    """[G/H <- G/L -> G/K] for class representatives h, l, k."""
    lat = group.lattice()
    X = GSet.orbit(group, h)
    Y = GSet.orbit(group, k)
    return Span(X, Y, (lat.class_of[l],), ((0, u),), ((0, v),))


def hom_basis(group, h, k):
    """Canonical keys of the basis spans G/H <- G/L -> G/K (transitive apex)."""
    lat = group.lattice()
    H, K = lat[h], lat[k]
    keys = set()
    for cl, li in enumerate(lat.reps):
        L = lat[li]
        us = sorted({canon(group, g, H) for g in range(group.n) if is_map(group, L, g, H)})
        vs = sorted({canon(group, g, K) for g in range(group.n) if is_map(group, L, g, K)})
        for u in us:
            for v in vs:
                keys.add(transitive_span(group, h, li, u, k, v).key())
    return sorted(keys)
