"""Finite groups as Cayley tables, their subgroup lattices and Möbius function.

Elements are the integers 0..n-1.  Subgroups are stored as sorted tuples of
element indices together with a bitmask for fast containment tests.
"""
from __future__ import annotations

import itertools
import os
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GroupTooLarge, InvalidGroup, NotComparable, NotNormal, NotSubgroup, UnknownGroup

DEFAULT_BOUND = 512


class FiniteGroup:
    def __init__(self, table, name="G", labels=None, validate=True):
        self.table = [list(row) for row in table]
        self.n = len(self.table)
        self.name = name
        if validate:
            self._validate()
        self.identity = self._find_identity()
        if self.identity is None:
            raise InvalidGroup("no identity element")
        self.inv = [0] * self.n
        for a in range(self.n):
            row = self.table[a]
            b = row.index(self.identity) if self.identity in row else None
            if b is None:
                raise InvalidGroup(f"element {a} has no inverse")
            self.inv[a] = b
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.n)]
        self._cache = {}
        self._lock = threading.Lock()
        if validate:
            self._check_group_axioms()

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.n})"

    def _validate(self):
        n = self.n
        if n == 0:
            raise InvalidGroup("empty table")
        for row in self.table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise InvalidGroup("table is not an n x n table of indices 0..n-1")

    def _find_identity(self):
        for e in range(self.n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.n)):
                return e
        return None

    def _check_group_axioms(self):
        n = self.n
        full = set(range(n))
        for row in self.table:
            if set(row) != full:
                raise InvalidGroup("table is not a Latin square")
        for a in range(n):
            if self.table[self.inv[a]][a] != self.identity:
                raise InvalidGroup(f"element {a} has no two-sided inverse")
        # Light's test: it suffices to check associativity against generators
        t = self.table
        for g in self.generators():
            for x in range(n):
                xg = t[x][g]
                for y in range(n):
                    if t[xg][y] != t[x][t[g][y]]:
                        raise InvalidGroup(f"not associative at ({x},{g},{y})")

    def mul(self, a, b):
        return self.table[a][b]

    def conj(self, g, x):
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inv[g]]

    def order_of(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def closure(self, gens):
        """Element set (as a sorted tuple) of the subgroup generated by gens."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                row = self.table[x]
                for g in gens:
                    y = row[g]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elems))

    def generators(self):
        key = "gens"
        if key not in self._cache:
            gens, cur = [], {self.identity}
            for g in range(self.n):
                if g not in cur:
                    gens.append(g)
                    cur = set(self.closure(gens))
            self._cache[key] = tuple(gens)
        return self._cache[key]

    def lattice(self, bound=DEFAULT_BOUND) -> SubgroupLattice:
        with self._lock:
            lat = self._cache.get("lattice")
            if lat is None:
                lat = enumerate_subgroups(self, bound)
                self._cache["lattice"] = lat
            return lat

    def memo(self, key, fn):
        """Per-group memo table; `fn` is computed once per key."""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        val = fn()
        with self._lock:
            return self._cache.setdefault(key, val)

    def full(self) -> Subgroup:
        return self.subgroup(range(self.n))

    def trivial(self) -> Subgroup:
        return self.subgroup([self.identity])

    def subgroup(self, members, check=True) -> Subgroup:
        members = tuple(sorted(set(members)))
        if check:
            s = set(members)
            if self.identity not in s:
                raise NotSubgroup("subset does not contain the identity")
            for a in members:
                if self.inv[a] not in s or any(self.table[a][b] not in s for b in members):
                    raise NotSubgroup("subset is not closed")
        return Subgroup(members, _mask(members), self)


def _mask(members):
    m = 0
    for a in members:
        m |= 1 << a
    return m


@dataclass(frozen=True)
class Subgroup:
    members: tuple
    mask: int = field(repr=False)
    group: FiniteGroup = field(compare=False, repr=False, hash=False)

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, g):
        return bool(self.mask >> g & 1)

    def __le__(self, other):
        return self.mask & other.mask == self.mask

    def __lt__(self, other):
        return self.mask != other.mask and self <= other

    def sort_key(self):
        return (len(self.members), self.members)


class SubgroupLattice:
    """All subgroups of a finite group, sorted by (order, member tuple)."""

    def __init__(self, group, subgroups):
        self.group = group
        self.subgroups = sorted(subgroups, key=Subgroup.sort_key)
        self.index_of = {s.mask: i for i, s in enumerate(self.subgroups)}
        self._conj = {}
        self._interval = {}
        self._mobius = {}
        self._subclasses = {}
        self._build_classes()

    def __len__(self):
        return len(self.subgroups)

    def __getitem__(self, i) -> Subgroup:
        return self.subgroups[i]

    def index(self, sub) -> int:
        try:
            return self.index_of[sub.mask]
        except KeyError:
            raise NotSubgroup("not a subgroup of this group") from None

    def leq(self, i, j) -> bool:
        a, b = self.subgroups[i].mask, self.subgroups[j].mask
        return a & b == a

    def below(self, j):
        """Indices of subgroups contained in subgroup j (in lattice order)."""
        return [i for i in range(len(self.subgroups)) if self.leq(i, j)]

    def conj_index(self, g, i) -> int:
        key = (g, i)
        r = self._conj.get(key)
        if r is None:
            G = self.group
            m = 0
            for a in self.subgroups[i].members:
                m |= 1 << G.conj(g, a)
            r = self.index_of[m]
            self._conj[key] = r
        return r

    def _build_classes(self):
        n = len(self.subgroups)
        cls = [-1] * n
        classes = []
        for i in range(n):
            if cls[i] >= 0:
                continue
            orbit = sorted({self.conj_index(g, i) for g in range(self.group.n)})
            for j in orbit:
                cls[j] = len(classes)
            classes.append(orbit)
        # subgroups are sorted, so orbit[0] is the canonical representative and
        # the classes come out ordered by (order, representative)
        self.classes = classes
        self.class_of = cls
        self.reps = [c[0] for c in classes]

    def intersect(self, i, j) -> int:
        m = self.subgroups[i].mask & self.subgroups[j].mask
        return self.index_of[m]

    def sub_classes(self, h):
        """H-conjugacy classes of subgroups of subgroup h, as lists of indices."""
        if h not in self._subclasses:
            H = self.subgroups[h]
            inside = self.below(h)
            seen = set()
            out = []
            for i in inside:
                if i in seen:
                    continue
                orbit = sorted({self.conj_index(x, i) for x in H.members})
                seen.update(orbit)
                out.append(orbit)
            self._subclasses[h] = out
        return self._subclasses[h]

    def sub_class_of(self, h, i) -> int:
        for c, orbit in enumerate(self.sub_classes(h)):
            if i in orbit:
                return c
        raise NotSubgroup("not a subgroup of the given subgroup")

    def mobius(self, d, k) -> int:
        """Signed chain count between subgroups d <= k (indices)."""
        if not self.leq(d, k):
            raise NotComparable("first subgroup is not contained in the second")
        table = self._mobius.get(d)
        if table is None:
            table = self._mobius_from(d)
            self._mobius[d] = table
        return table[k]

    def _mobius_from(self, d):
        # h(E) = sum_i (-1)^i c_i(d, E), where c_i counts strict chains of
        # length i; grouping chains by their penultimate member gives
        # h(E) = -sum_{d <= A < E} h(A).
        above = [e for e in range(len(self.subgroups)) if self.leq(d, e)]
        h = {d: 1}
        for e in above:
            if e == d:
                continue
            h[e] = -sum(h[a] for a in above if a in h and a != e and self.leq(a, e))
        return h


def enumerate_subgroups(G: FiniteGroup, bound=DEFAULT_BOUND) -> SubgroupLattice:
    if G.n > bound:
        raise GroupTooLarge(f"|G| = {G.n} exceeds the bound {bound}")
    cyclic = {}
    for g in range(G.n):
        members = G.closure([g])
        cyclic.setdefault(_mask(members), (members, g))
    found = {}
    queue = []
    for m, (members, g) in cyclic.items():
        found[m] = (members, (g,))
        queue.append(m)
    cyc = list(cyclic.items())
    while queue:
        m = queue.pop()
        members, gens = found[m]
        for cm, (_, g) in cyc:
            if cm & m == cm:
                continue
            joined = G.closure(gens + (g,))
            jm = _mask(joined)
            if jm not in found:
                found[jm] = (joined, gens + (g,))
                queue.append(jm)
    subs = [Subgroup(members, m, G) for m, (members, _) in found.items()]
    return SubgroupLattice(G, subs)


# ---------------------------------------------------------------------------
# normalizers, cores, quotients


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    hs = set(H.members)
    members = [g for g in range(G.n) if all(G.conj(g, h) in hs for h in H.members)]
    return Subgroup(tuple(members), _mask(members), G)


def core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    m = H.mask
    for g in range(G.n):
        cm = 0
        for h in H.members:
            cm |= 1 << G.conj(g, h)
        m &= cm
    members = tuple(i for i in range(G.n) if m >> i & 1)
    return Subgroup(members, m, G)


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    return all(G.conj(g, a) in N for g in G.generators() for a in N.members)


def conjugate(G: FiniteGroup, g, H: Subgroup) -> Subgroup:
    members = tuple(sorted(G.conj(g, h) for h in H.members))
    return Subgroup(members, _mask(members), G)


def coset_quotient(G: FiniteGroup, N: Subgroup, ambient: Subgroup = None, name=None):
    """The group ambient/N for N normal in ambient.

    Returns (Q, proj, lift): proj maps elements of ambient to indices of Q and
    lift[q] is the least element of the coset q.
    """
    amb = ambient.members if ambient is not None else tuple(range(G.n))
    seen = {}
    lift = []
    for a in amb:
        if a in seen:
            continue
        coset = sorted(G.table[a][x] for x in N.members)
        q = len(lift)
        lift.append(coset[0])
        for c in coset:
            seen[c] = q
    k = len(lift)
    table = [[seen[G.table[lift[i]][lift[j]]] for j in range(k)] for i in range(k)]
    labels = [G.labels[x] + "N" if N.order > 1 else G.labels[x] for x in lift]
    Q = FiniteGroup(table, name or f"{G.name}/N", labels=labels, validate=False)
    return Q, seen, lift


def quotient(G: FiniteGroup, N: Subgroup, name=None):
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    return coset_quotient(G, N, None, name)


def weyl_group(G: FiniteGroup, H: Subgroup):
    """N_G(H)/H as (W, proj, lift); see coset_quotient."""
    N = normalizer(G, H)
    return coset_quotient(G, H, N, name=f"W({G.name})")


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup, within: Subgroup = None):
    """Representatives of H\\J/K (J = within, default G) with their cosets.

    The representative of each double coset is its least element, and the
    list is sorted by representative.
    """
    amb = within.members if within is not None else range(G.n)
    t = G.table
    covered = set()
    out = []
    for x in amb:
        if x in covered:
            continue
        hx = {t[h][x] for h in H.members}
        coset = {t[y][k] for y in hx for k in K.members}
        covered |= coset
        out.append((x, frozenset(coset)))
    return out


def double_coset_reps(G, H, K, within=None):
    return [x for x, _ in double_cosets(G, H, K, within)]


def transversal(G: FiniteGroup, H: Subgroup, K: Subgroup):
    """Least representatives of the left cosets hK, h in H, ascending."""
    if not K <= H:
        raise NotSubgroup("K is not contained in H")
    covered = set()
    out = []
    t = G.table
    for h in H.members:
        if h in covered:
            continue
        covered.update(t[h][k] for k in K.members)
        out.append(h)
    return out


def mobius(lattice: SubgroupLattice, D: Subgroup, K: Subgroup) -> Fraction:
    return Fraction(lattice.mobius(lattice.index(D), lattice.index(K)))


# ---------------------------------------------------------------------------
# constructions


def cyclic(n, name=None) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name or f"C{n}", validate=False)


def cycle_string(perm):
    """Disjoint-cycle notation on 1..k for a 0-based image tuple."""
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def from_permutations(perms, name="G") -> FiniteGroup:
    """Group generated by 0-based image tuples; (ab)(x) = a(b(x))."""
    degree = len(perms[0])
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in perms:
                q = tuple(g[p[x]] for x in range(degree))
                if q not in elems:
                    elems.add(q)
                    new.append(q)
        frontier = new
    elems = sorted(elems)
    if len(elems) > DEFAULT_BOUND:
        raise GroupTooLarge(f"permutation group of order {len(elems)} exceeds the bound")
    idx = {p: i for i, p in enumerate(elems)}
    table = [[idx[tuple(a[b[x]] for x in range(degree))] for b in elems] for a in elems]
    return FiniteGroup(table, name, labels=[cycle_string(p) for p in elems], validate=False)


def symmetric(n) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnknownGroup("built-in symmetric groups are S1..S5")
    elems = sorted(itertools.permutations(range(n)))
    return from_permutations(elems, name=f"S{n}")


def zp_level(p, k) -> FiniteGroup:
    return cyclic(p**k, name=f"Z/{p}^{k}")


def direct_product(A: FiniteGroup, B: FiniteGroup, name=None) -> FiniteGroup:
    nb = B.n
    table = [[A.table[i // nb][j // nb] * nb + B.table[i % nb][j % nb]
              for j in range(A.n * nb)] for i in range(A.n * nb)]
    labels = [f"({A.labels[i // nb]},{B.labels[i % nb]})" for i in range(A.n * nb)]
    G = FiniteGroup(table, name or f"{A.name}x{B.name}", labels=labels, validate=False)
    return G


_NAME = re.compile(r"^(?:C(\d+)|S(\d+)|Z/(\d+)\^(\d+)|Z/(\d+))$")


def builtin(name: str) -> FiniteGroup:
    name = name.strip()
    if "x" in name:
        parts = [builtin(p) for p in name.split("x")]
        G = parts[0]
        for P in parts[1:]:
            G = direct_product(G, P)
        G.name = name
        return G
    m = _NAME.match(name)
    if not m:
        raise UnknownGroup(f"unknown group name {name!r}")
    if m.group(1):
        n = int(m.group(1))
        if n < 1:
            raise UnknownGroup("cyclic order must be positive")
        if n > DEFAULT_BOUND:
            raise GroupTooLarge(f"C{n} exceeds the bound")
        return cyclic(n)
    if m.group(2):
        return symmetric(int(m.group(2)))
    if m.group(5):
        n = int(m.group(5))
        if not 1 <= n <= DEFAULT_BOUND:
            raise UnknownGroup(f"Z/{n} is not supported")
        return cyclic(n, name=f"Z/{n}")
    p, k = int(m.group(3)), int(m.group(4))
    if p < 2 or p**k > DEFAULT_BOUND:
        raise UnknownGroup(f"Z/{p}^{k} is not supported")
    return zp_level(p, k)


_CYCLES = re.compile(r"^\s*(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)+$")


def parse_cycles(line, degree=None):
    if not _CYCLES.match(line):
        raise InvalidGroup(f"bad cycle notation: {line!r}")
    points = [int(x) for x in re.findall(r"\d+", line)]
    k = degree or (max(points) if points else 1)
    perm = list(range(k))
    for cyc in re.findall(r"\(([^)]*)\)", line):
        pts = [int(x) - 1 for x in re.findall(r"\d+", cyc)]
        if any(p < 0 or p >= k for p in pts) or len(set(pts)) != len(pts):
            raise InvalidGroup(f"bad cycle {cyc!r}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def parse_group_text(text: str, name="G") -> FiniteGroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise InvalidGroup("empty group file")
    head = lines[0].lower()
    body = lines[1:]
    if head == "cayley":
        try:
            table = [[int(x) for x in ln.replace(",", " ").split()] for ln in body]
        except ValueError:
            raise InvalidGroup("cayley table entries must be integers") from None
        return FiniteGroup(table, name)
    if head == "perm":
        if not body:
            raise InvalidGroup("perm file without generators")
        degree = max(max([int(x) for x in re.findall(r"\d+", ln)] or [1]) for ln in body)
        gens = [parse_cycles(ln, degree) for ln in body]
        return from_permutations(gens, name)
    raise InvalidGroup("group file must start with 'cayley' or 'perm'")


def load_group(source: str) -> FiniteGroup:
    """A built-in name (C4, S3, Z/2^3, C2xC3) or a path to a group file."""
    if os.path.isfile(source):
        with open(source) as fh:
            return parse_group_text(fh.read(), name=os.path.basename(source))
    return builtin(source)


def subgroup_generators(G: FiniteGroup, H: Subgroup):
    gens, cur = [], {G.identity}
    for g in H.members:
        if g not in cur:
            gens.append(g)
            cur = set(G.closure(gens))
    return gens


def subgroup_label(G: FiniteGroup, H: Subgroup) -> str:
    gens = subgroup_generators(G, H)
    if not gens:
        return "1"
    return "<" + ", ".join(G.labels[g] for g in gens) + ">"
