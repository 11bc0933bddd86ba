"""Symbolic scattered spaces and their Cantor-Bendixson invariants.

Grammar: empty | disc(n) | P | (E + E) | (E * E), where P is the convergent
sequence {1/n} with its limit 0.  A point of P is an integer n >= 1 (the
isolated point 1/n) or INF (the limit point).  Points of disc(n) are
0..n-1, points of a sum are ("L", x) or ("R", y), points of a product are
pairs (x, y).

Three non-scattered constants can be named but not analysed further:
cantor (the Cantor set), B (rank one, perfect hull a Cantor set) and zhat
(the perfect space of closed subgroups of the profinite integers).
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .errors import EmptySpace, PointNotInSpace, SpaceSyntaxError, UnsupportedSpace

INF = math.inf


class SpaceExpr:
    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Empty(SpaceExpr):
    pass


@dataclass(frozen=True)
class Discrete(SpaceExpr):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("disc(n) needs n >= 1")


@dataclass(frozen=True)
class PSpace(SpaceExpr):
    pass


@dataclass(frozen=True)
class Sum(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Prod(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Opaque(SpaceExpr):
    """A named space outside the scattered grammar, with known rank."""

    name: str
    rank: int
    perfect_hull: str


P = PSpace()
OPAQUE = {
    "cantor": Opaque("cantor", 0, "cantor"),
    "B": Opaque("B", 1, "cantor"),
    "zhat": Opaque("zhat", 0, "zhat"),
}


def power(X: SpaceExpr, n: int) -> SpaceExpr:
    """X^n as a right-nested product; X^1 = X."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    return X if n == 1 else Prod(X, power(X, n - 1))


# ---------------------------------------------------------------------------
# text form


def to_text(X: SpaceExpr) -> str:
    if isinstance(X, Empty):
        return "empty"
    if isinstance(X, Discrete):
        return f"disc({X.n})"
    if isinstance(X, PSpace):
        return "P"
    if isinstance(X, Sum):
        return f"({to_text(X.left)}+{to_text(X.right)})"
    if isinstance(X, Prod):
        return f"({to_text(X.left)}*{to_text(X.right)})"
    if isinstance(X, Opaque):
        return X.name
    raise TypeError(f"not a space expression: {X!r}")


def parse_space(text: str) -> SpaceExpr:
    """Parse the text grammar; errors carry the byte offset of the problem."""
    pos = 0

    def offset(i):
        return len(text[:i].encode())

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expect(ch):
        nonlocal pos
        skip()
        if pos >= len(text) or text[pos] != ch:
            raise SpaceSyntaxError(f"expected {ch!r}", offset(pos))
        pos += 1

    def word():
        nonlocal pos
        skip()
        m = re.compile(r"[A-Za-z_]+").match(text, pos)
        if not m:
            return None
        pos = m.end()
        return m.group(0), m.start()

    def expr():
        nonlocal pos
        skip()
        if pos >= len(text):
            raise SpaceSyntaxError("unexpected end of input", offset(pos))
        if text[pos] == "(":
            pos += 1
            a = expr()
            skip()
            if pos >= len(text) or text[pos] not in "+*":
                raise SpaceSyntaxError("expected '+' or '*'", offset(pos))
            op = text[pos]
            pos += 1
            b = expr()
            expect(")")
            return Sum(a, b) if op == "+" else Prod(a, b)
        w = word()
        if w is None:
            raise SpaceSyntaxError(f"unexpected character {text[pos]!r}", offset(pos))
        name, start = w
        if name == "empty":
            return Empty()
        if name == "P":
            return P
        if name in OPAQUE:
            return OPAQUE[name]
        if name == "disc":
            expect("(")
            skip()
            m = re.compile(r"\d+").match(text, pos)
            if not m:
                raise SpaceSyntaxError("expected a positive integer", offset(pos))
            n = int(m.group(0))
            if n < 1:
                raise SpaceSyntaxError("disc(n) needs n >= 1", offset(pos))
            pos = m.end()
            expect(")")
            return Discrete(n)
        raise SpaceSyntaxError(f"unknown name {name!r}", offset(start))

    X = expr()
    skip()
    if pos != len(text):
        raise SpaceSyntaxError("trailing input", offset(pos))
    return X


# ---------------------------------------------------------------------------
# points


def _opaque(X):
    raise UnsupportedSpace(f"{X.name} is not scattered; its points are not modelled")


def check_point(X: SpaceExpr, x):
    if isinstance(X, Empty):
        raise PointNotInSpace("the empty space has no points")
    if isinstance(X, Discrete):
        if not (isinstance(x, int) and not isinstance(x, bool) and 0 <= x < X.n):
            raise PointNotInSpace(f"{x!r} is not a point of disc({X.n})")
        return
    if isinstance(X, PSpace):
        if x == INF or (isinstance(x, int) and not isinstance(x, bool) and x >= 1):
            return
        raise PointNotInSpace(f"{x!r} is not a point of P")
    if isinstance(X, Sum):
        if not (isinstance(x, tuple) and len(x) == 2 and x[0] in ("L", "R")):
            raise PointNotInSpace(f"{x!r} is not a point of a sum")
        check_point(X.left if x[0] == "L" else X.right, x[1])
        return
    if isinstance(X, Prod):
        if not (isinstance(x, tuple) and len(x) == 2):
            raise PointNotInSpace(f"{x!r} is not a point of a product")
        check_point(X.left, x[0])
        check_point(X.right, x[1])
        return
    if isinstance(X, Opaque):
        _opaque(X)
    raise TypeError(f"not a space expression: {X!r}")


def sample_points(X: SpaceExpr, p_values=(1, INF), disc_limit=2):
    """Points whose P-coordinates lie in p_values (and disc(n) coordinates below disc_limit)."""
    if isinstance(X, Empty):
        return []
    if isinstance(X, Discrete):
        return list(range(min(X.n, disc_limit)))
    if isinstance(X, PSpace):
        return list(p_values)
    if isinstance(X, Sum):
        return ([("L", a) for a in sample_points(X.left, p_values, disc_limit)]
                + [("R", b) for b in sample_points(X.right, p_values, disc_limit)])
    if isinstance(X, Prod):
        return list(itertools.product(sample_points(X.left, p_values, disc_limit),
                                      sample_points(X.right, p_values, disc_limit)))
    if isinstance(X, Opaque):
        _opaque(X)
    raise TypeError(f"not a space expression: {X!r}")


def flat_coords(X: SpaceExpr, x):
    """Leaf coordinates of a point of a product tree, left to right."""
    if isinstance(X, Prod):
        return flat_coords(X.left, x[0]) + flat_coords(X.right, x[1])
    return (x,)


def point_from_coords(X: SpaceExpr, coords):
    coords = list(coords)

    def build(Y):
        if isinstance(Y, Prod):
            a = build(Y.left)
            return (a, build(Y.right))
        return coords.pop(0)
    out = build(X)
    if coords:
        raise PointNotInSpace("too many coordinates")
    return out


def top_point(X: SpaceExpr):
    """A point of maximal height (INF in every P coordinate)."""
    if isinstance(X, Empty):
        raise EmptySpace("the empty space has no points")
    if isinstance(X, Discrete):
        return 0
    if isinstance(X, PSpace):
        return INF
    if isinstance(X, Sum):
        if rank(X.left) >= rank(X.right):
            return ("L", top_point(X.left))
        return ("R", top_point(X.right))
    if isinstance(X, Prod):
        return (top_point(X.left), top_point(X.right))
    if isinstance(X, Opaque):
        _opaque(X)
    raise TypeError(f"not a space expression: {X!r}")


def point_to_json(X: SpaceExpr, x):
    if isinstance(X, PSpace):
        return "inf" if x == INF else x
    if isinstance(X, Sum):
        return {"side": x[0], "point": point_to_json(X.left if x[0] == "L" else X.right, x[1])}
    if isinstance(X, Prod):
        return [point_to_json(X.left, x[0]), point_to_json(X.right, x[1])]
    return x


# ---------------------------------------------------------------------------
# derivatives, heights and rank


def in_derivative(X: SpaceExpr, k: int, x) -> bool:
    """Membership of x in X^(k), evaluated with the product formula
    (X x Y)^(k) = union over p + q = k of X^(p) x Y^(q)."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    check_point(X, x)
    return _in(X, k, x)


def _in(X, k, x):
    if k == 0:
        return True
    if isinstance(X, Discrete):
        return False
    if isinstance(X, PSpace):
        return k == 1 and x == INF
    if isinstance(X, Sum):
        return _in(X.left if x[0] == "L" else X.right, k, x[1])
    if isinstance(X, Prod):
        return any(_in(X.left, p, x[0]) and _in(X.right, k - p, x[1]) for p in range(k + 1))
    return False


def derivative_empty(X: SpaceExpr, k: int) -> bool:
    """Whether X^(k) is empty, decided structurally."""
    if isinstance(X, Empty):
        return True
    if isinstance(X, Discrete):
        return k >= 1
    if isinstance(X, PSpace):
        return k >= 2
    if isinstance(X, Sum):
        return derivative_empty(X.left, k) and derivative_empty(X.right, k)
    if isinstance(X, Prod):
        return all(derivative_empty(X.left, p) or derivative_empty(X.right, k - p) for p in range(k + 1))
    if isinstance(X, Opaque):
        _opaque(X)
    raise TypeError(f"not a space expression: {X!r}")


@dataclass(frozen=True)
class Derivative:
    """X^(k) as a predicate on the points of X."""

    space: SpaceExpr
    k: int

    def contains(self, x) -> bool:
        return in_derivative(self.space, self.k, x)

    def is_empty(self) -> bool:
        return derivative_empty(self.space, self.k)

    def describe(self) -> str:
        X, k = self.space, self.k
        if self.is_empty():
            return "empty"
        if k == 0:
            return to_text(X)
        n = p_power_degree(X)
        if n is not None:
            return f"points of {to_text(X)} with at least {k} infinite coordinates"
        return f"union over p+q={k} of products of derivatives" if isinstance(X, Prod) else f"derivative {k} of {to_text(X)}"

    def to_json(self):
        return {"expr": to_text(self.space), "k": self.k, "empty": self.is_empty(), "description": self.describe()}


def derivative(X: SpaceExpr, k: int) -> Derivative:
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if contains_opaque(X):
        raise UnsupportedSpace("derivatives of non-scattered constants are not modelled")
    return Derivative(X, k)


def p_power_degree(X):
    """n if X is a product tree of n copies of P, else None."""
    if isinstance(X, PSpace):
        return 1
    if isinstance(X, Prod):
        a, b = p_power_degree(X.left), p_power_degree(X.right)
        return a + b if a and b else None
    return None


def height(X: SpaceExpr, x) -> int:
    """Cantor-Bendixson height: additive in products, inherited in sums."""
    check_point(X, x)
    return _height(X, x)


def _height(X, x):
    if isinstance(X, Discrete):
        return 0
    if isinstance(X, PSpace):
        return 1 if x == INF else 0
    if isinstance(X, Sum):
        return _height(X.left if x[0] == "L" else X.right, x[1])
    if isinstance(X, Prod):
        return _height(X.left, x[0]) + _height(X.right, x[1])
    raise TypeError(f"not a space expression: {X!r}")


def contains_opaque(X) -> bool:
    if isinstance(X, Opaque):
        return True
    if isinstance(X, (Sum, Prod)):
        return contains_opaque(X.left) or contains_opaque(X.right)
    return False


def is_empty(X) -> bool:
    if isinstance(X, Empty):
        return True
    if isinstance(X, Sum):
        return is_empty(X.left) and is_empty(X.right)
    if isinstance(X, Prod):
        return is_empty(X.left) or is_empty(X.right)
    return False


def rank(X: SpaceExpr) -> int:
    """Cantor-Bendixson rank by structural rules."""
    if is_empty(X):
        return 0
    if isinstance(X, Discrete):
        return 1
    if isinstance(X, PSpace):
        return 2
    if isinstance(X, Opaque):
        return X.rank
    if isinstance(X, Sum):
        return max(rank(X.left), rank(X.right))
    if isinstance(X, Prod):
        if contains_opaque(X):
            raise UnsupportedSpace("rank of a product with a non-scattered factor is not modelled")
        return rank(X.left) + rank(X.right) - 1
    raise TypeError(f"not a space expression: {X!r}")


def rank_by_derivatives(X: SpaceExpr, limit=64) -> int:
    """Least k with X^(k) empty, from the derivative predicate (scattered X only)."""
    if contains_opaque(X) and not is_empty(X):
        raise UnsupportedSpace("non-scattered spaces never reach the empty set")
    for k in range(limit + 1):
        if derivative_empty(X, k):
            return k
    raise UnsupportedSpace("derivative chain did not terminate")


def is_scattered(X: SpaceExpr) -> bool:
    if is_empty(X):
        return True
    if isinstance(X, Opaque):
        return False
    if isinstance(X, (Sum, Prod)):
        return is_scattered(X.left) and is_scattered(X.right)
    return True


def injective_dimension(X: SpaceExpr) -> dict:
    """Report {expr, rank, scattered, injective_dimension} with witness data.

    For a nonempty scattered space of rank n the injective dimension of
    sheaves of rational vector spaces is n - 1; a point of height n - 1 is
    returned as the natural Hom source for the Ext computation.
    """
    if is_empty(X):
        raise EmptySpace("injective dimension is not defined for the empty space")
    if not is_scattered(X):
        raise UnsupportedSpace(f"{to_text(X)} is not scattered; its injective dimension is not determined here")
    r = rank(X)
    x = top_point(X)
    return {
        "expr": to_text(X),
        "rank": r,
        "scattered": True,
        "injective_dimension": r - 1,
        "witness_point": point_to_json(X, x),
        "witness_height": height(X, x),
    }


def cb_report(X: SpaceExpr) -> dict:
    """As injective_dimension, but reports non-scattered or empty spaces instead of raising."""
    if is_empty(X) or not is_scattered(X):
        out = {"expr": to_text(X), "scattered": is_scattered(X), "injective_dimension": None}
        try:
            out["rank"] = rank(X)
        except UnsupportedSpace:
            out["rank"] = None
        if isinstance(X, Opaque):
            out["perfect_hull"] = X.perfect_hull
        return out
    return injective_dimension(X)
