"""Rational Burnside rings, tables of marks and their idempotents.

A(H) is built for any subgroup H of a finite group G, using the lattice of G
and H-conjugacy.  The basis [H/L] and the mark coordinates are both indexed
by the H-classes of subgroups of H, ordered by (order, representative).

The table of marks is stored with rows indexed by the basis orbit [H/L] and
columns by the subgroup K at which the mark is taken, so row L is the mark
vector of [H/L] and the table is lower triangular.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .errors import GroupMismatch, NotSubgroup, UnknownLevel
from .finite_group import FiniteGroup, subgroup_label
from .gsets import fixed_count_orbit


class BurnsideRing:
    def __init__(self, group: FiniteGroup, sub=None):
        lat = group.lattice()
        self.group = group
        self.h = len(lat) - 1 if sub is None else sub
        self.sub = lat[self.h]
        self.classes = lat.sub_classes(self.h)
        self.reps = [c[0] for c in self.classes]
        self.rank = len(self.reps)
        self._class_of = {i: c for c, orbit in enumerate(self.classes) for i in orbit}
        amb = self.sub
        self.table = [[Fraction(fixed_count_orbit(group, l, k, ambient=amb)) for k in self.reps]
                      for l in self.reps]
        inv = la.inverse(la.mat(self.table, (self.rank, self.rank)))
        self.table_inv = la.to_fractions(inv)

    def __repr__(self):
        return f"BurnsideRing(A({subgroup_label(self.group, self.sub)}) in {self.group.name})"

    def class_of(self, i) -> int:
        """Class (position) of lattice subgroup i, which must lie in the ambient subgroup."""
        try:
            return self._class_of[i]
        except KeyError:
            raise NotSubgroup("subgroup is not contained in the ambient subgroup") from None

    def labels(self):
        G = self.group
        lat = G.lattice()
        return [subgroup_label(G, lat[r]) for r in self.reps]

    def marks_of(self, coeffs):
        n = self.rank
        return tuple(sum((coeffs[l] * self.table[l][k] for l in range(n)), Fraction(0)) for k in range(n))

    def coeffs_of(self, marks):
        n = self.rank
        return tuple(sum((marks[k] * self.table_inv[k][l] for k in range(n)), Fraction(0)) for l in range(n))

    def element(self, coeffs) -> BurnsideElement:
        return BurnsideElement(self, tuple(Fraction(c) for c in coeffs))

    def from_marks(self, marks) -> BurnsideElement:
        marks = tuple(Fraction(m) for m in marks)
        return BurnsideElement(self, self.coeffs_of(marks), marks)

    def basis(self, c) -> BurnsideElement:
        v = [0] * self.rank
        v[c] = 1
        return self.element(v)

    def orbit(self, i) -> BurnsideElement:
        """[H/L] for the lattice subgroup i = L."""
        return self.basis(self.class_of(i))

    def one(self) -> BurnsideElement:
        return self.basis(self.rank - 1)

    def zero(self) -> BurnsideElement:
        return self.element([0] * self.rank)


def burnside_ring(group: FiniteGroup, sub=None) -> BurnsideRing:
    lat = group.lattice()
    key = ("burnside", len(lat) - 1 if sub is None else sub)
    return group.memo(key, lambda: BurnsideRing(group, sub))


class BurnsideElement:
    __slots__ = ("ring", "coeffs", "_marks")

    def __init__(self, ring, coeffs, marks=None):
        if len(coeffs) != ring.rank:
            raise ValueError("wrong number of coefficients")
        self.ring = ring
        self.coeffs = tuple(coeffs)
        self._marks = marks

    @property
    def marks(self):
        if self._marks is None:
            self._marks = self.ring.marks_of(self.coeffs)
        return self._marks

    def _check(self, other):
        if self.ring is not other.ring:
            raise GroupMismatch("Burnside elements of different rings")

    def __add__(self, other):
        self._check(other)
        return self.ring.element([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return self.ring.element([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, q):
        q = Fraction(q)
        return self.ring.element([q * a for a in self.coeffs])

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, BurnsideElement) and self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BurnsideElement({[str(c) for c in self.coeffs]})"

    def is_idempotent(self):
        return multiply(self, self) == self

    def to_json(self):
        return {"coeffs": [la.fmt(c) for c in self.coeffs], "marks": [la.fmt(m) for m in self.marks]}


def multiply(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    a._check(b)
    return a.ring.from_marks([x * y for x, y in zip(a.marks, b.marks)])


def marks_matrix(group: FiniteGroup):
    """Table of marks of A(G) as a list of Fraction rows (rows = basis orbits)."""
    return [list(r) for r in burnside_ring(group).table]


def idempotent(ring: BurnsideRing, k) -> BurnsideElement:
    """e_K in A(H) for a lattice subgroup k <= H:
    sum over D <= K of |D| / |N_H(K)| * mu(D, K) [H/D]."""
    G = ring.group
    lat = G.lattice()
    ring.class_of(k)
    norm = sum(1 for x in ring.sub.members if lat.conj_index(x, k) == k)
    coeffs = [Fraction(0)] * ring.rank
    for d in lat.below(k):
        coeffs[ring.class_of(d)] += Fraction(lat[d].order, norm) * lat.mobius(d, k)
    return ring.element(coeffs)


def idempotent_finite(group: FiniteGroup, H) -> BurnsideElement:
    lat = group.lattice()
    return idempotent(burnside_ring(group), lat.index(H))


def top_idempotent(group: FiniteGroup, h) -> BurnsideElement:
    """e_H in A(H): the idempotent of the point H of S(H)."""
    return idempotent(burnside_ring(group, h), h)


def decompose_unit(group: FiniteGroup, sub=None):
    ring = burnside_ring(group, sub)
    return [idempotent(ring, r) for r in ring.reps]


def idempotent_level(levels, level, k) -> BurnsideElement:
    """Idempotent of the point k (lattice index) of S(G_level) in A(G_level).

    `levels` is a sequence of finite quotients (or anything with a .levels
    attribute holding one).  The element lives in A(G/N) and is read as
    inflated along the projection G -> G/N.
    """
    groups = getattr(levels, "levels", levels)
    if not 0 <= level < len(groups):
        raise UnknownLevel(f"level {level} is not in the tower")
    G = groups[level]
    lat = G.lattice()
    if not 0 <= k < len(lat):
        raise NotSubgroup(f"no subgroup {k} at level {level}")
    return idempotent(burnside_ring(G), k)


def image_index(src: FiniteGroup, dst: FiniteGroup, pi, i) -> int:
    """Lattice index in dst of the image of src subgroup i under pi."""
    lat_s, lat_d = src.lattice(), dst.lattice()
    return lat_d.index(dst.subgroup({pi[a] for a in lat_s[i].members}, check=False))


def inflate_element(x: BurnsideElement, big: FiniteGroup, pi) -> BurnsideElement:
    """Pull x in A(G) back along the surjection pi: big -> G (marks precomposed)."""
    G = x.ring.group
    rb = burnside_ring(big)
    marks = []
    for r in rb.reps:
        img = image_index(big, G, pi, r)
        marks.append(x.marks[x.ring.class_of(img)])
    return rb.from_marks(marks)


def burnside_report(group: FiniteGroup, idempotents=False):
    ring = burnside_ring(group)
    out = {
        "group": group.name,
        "order": group.n,
        "classes": ring.labels(),
        "class_orders": [group.lattice()[r].order for r in ring.reps],
        "marks_matrix": [[la.fmt(v) for v in row] for row in ring.table],
    }
    if idempotents:
        rows = []
        for lab, e in zip(ring.labels(), decompose_unit(group)):
            row = {"class": lab}
            row.update(e.to_json())
            rows.append(row)
        out["idempotents"] = rows
    return out
