"""Thin helpers over sympy's DomainMatrix with field QQ.

Everything exact; zero-dimensional matrices are allowed and behave.
Vector spaces are represented by basis matrices whose columns are the
basis vectors.
"""
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def qq(x):
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ.convert(x)


def frac(x) -> Fraction:
    """Convert a QQ element (or int/str) to a normalized Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def fmt(x) -> str:
    """Serialize an exact rational as "num/den"."""
    f = frac(x)
    return f"{f.numerator}/{f.denominator}"


def mat(rows, shape=None):
    rows = [[qq(v) for v in r] for r in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    if shape[0] == 0 or shape[1] == 0:
        return zeros(*shape)
    return DomainMatrix(rows, shape, QQ)


def zeros(r, c):
    return DomainMatrix.zeros((r, c), QQ).to_dense()


def eye(n):
    return DomainMatrix.eye(n, QQ).to_dense()


def scalar(n, x):
    return eye(n).scalarmul(qq(x))


def entries(m):
    r, c = m.shape
    if r == 0 or c == 0:
        return [[] for _ in range(r)]
    return m.to_dense().rep.to_list()


def to_strings(m):
    return [[fmt(v) for v in row] for row in entries(m)]


def from_strings(data, shape):
    return mat(data, shape)


def to_fractions(m):
    return [[frac(v) for v in row] for row in entries(m)]


def get(m, i, j) -> Fraction:
    return frac(m.rep.getitem(i, j))


def with_entry(m, i, j, value):
    rows = entries(m)
    rows[i][j] = qq(value)
    return mat(rows, m.shape)


def is_zero(m) -> bool:
    r, c = m.shape
    if r == 0 or c == 0:
        return True
    return m.is_zero_matrix


def equal(a, b) -> bool:
    return a.shape == b.shape and is_zero(a - b)


def mul(a, b):
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1])
    return (a * b).to_dense()


def chain(*ms):
    """Product m1 * m2 * ... * mk."""
    out = ms[0]
    for m in ms[1:]:
        out = mul(out, m)
    return out


def add(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} + {b.shape}")
    if 0 in a.shape:
        return a
    return (a + b).to_dense()


def sub(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} - {b.shape}")
    if 0 in a.shape:
        return a
    return (a - b).to_dense()


def scale(a, x):
    if 0 in a.shape:
        return a
    return a.scalarmul(qq(x)).to_dense()


def transpose(a):
    if 0 in a.shape:
        return zeros(a.shape[1], a.shape[0])
    return a.transpose().to_dense()


def rank(a) -> int:
    if 0 in a.shape:
        return 0
    return a.rank()


def rref(a):
    if 0 in a.shape:
        return a, ()
    r, piv = a.to_field().rref()
    return r.to_dense(), tuple(piv)


def hstack(*ms):
    ms = list(ms)
    r = ms[0].shape[0]
    cols = sum(m.shape[1] for m in ms)
    if r == 0 or cols == 0:
        return zeros(r, cols)
    ms = [m for m in ms if m.shape[1] > 0]
    return ms[0].hstack(*ms[1:]).to_dense()


def vstack(*ms):
    ms = list(ms)
    c = ms[0].shape[1]
    rows = sum(m.shape[0] for m in ms)
    if c == 0 or rows == 0:
        return zeros(rows, c)
    ms = [m for m in ms if m.shape[0] > 0]
    return ms[0].vstack(*ms[1:]).to_dense()


def block_diag(ms):
    r = sum(m.shape[0] for m in ms)
    c = sum(m.shape[1] for m in ms)
    rows = [[QQ(0)] * c for _ in range(r)]
    i0 = j0 = 0
    for m in ms:
        for i, row in enumerate(entries(m)):
            for j, v in enumerate(row):
                rows[i0 + i][j0 + j] = v
        i0 += m.shape[0]
        j0 += m.shape[1]
    return mat(rows, (r, c))


def columns(a, idx):
    idx = list(idx)
    if a.shape[0] == 0 or not idx:
        return zeros(a.shape[0], len(idx))
    return a.extract(list(range(a.shape[0])), idx).to_dense()


def rows_of(a, idx):
    idx = list(idx)
    if a.shape[1] == 0 or not idx:
        return zeros(len(idx), a.shape[1])
    return a.extract(idx, list(range(a.shape[1]))).to_dense()


def column_basis(a):
    """Columns of `a` at its pivot positions: a basis of the column space."""
    _, piv = rref(a)
    return columns(a, piv)


def nullspace(a):
    """Matrix whose columns form a basis of {v : a v = 0}."""
    r, c = a.shape
    if c == 0:
        return zeros(0, 0)
    if r == 0:
        return eye(c)
    red, piv = rref(a)
    free = [j for j in range(c) if j not in piv]
    rows = entries(red)
    basis = []
    for f in free:
        v = [QQ(0)] * c
        v[f] = QQ(1)
        for i, p in enumerate(piv):
            v[p] = -rows[i][f]
        basis.append(v)
    if not basis:
        return zeros(c, 0)
    return transpose(mat(basis, (len(basis), c)))


def inverse(a):
    n, m = a.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    return a.to_field().inv().to_dense()


def is_invertible(a) -> bool:
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def solve(a, b):
    """Some X with a X = b, or None when the system is inconsistent."""
    n, m = a.shape
    k = b.shape[1]
    if n != b.shape[0]:
        raise ValueError("shape mismatch in solve")
    if m == 0:
        return zeros(0, k) if is_zero(b) else None
    if k == 0:
        return zeros(m, 0)
    aug = hstack(a, b)
    red, piv = rref(aug)
    if any(p >= m for p in piv):
        return None
    rows = entries(red)
    x = [[QQ(0)] * k for _ in range(m)]
    for i, p in enumerate(piv):
        for j in range(k):
            x[p][j] = rows[i][m + j]
    return mat(x, (m, k))


class Coordinates:
    """Coordinates with respect to a basis matrix of full column rank.

    Picks rows where the basis is invertible, so coordinates of a vector
    already known to lie in the span cost one small product.  `exact`
    recomputes the vector and checks membership.
    """

    def __init__(self, basis):
        self.basis = basis
        n, d = basis.shape
        self.dim = d
        if d == 0:
            self.rows = ()
            self.inv = zeros(0, 0)
            return
        _, piv = rref(transpose(basis))
        if len(piv) != d:
            raise ValueError("basis columns are not independent")
        self.rows = tuple(piv)
        self.inv = inverse(rows_of(basis, piv))

    def of(self, v):
        """Coordinates of the columns of v (assumed to lie in the span)."""
        if self.dim == 0:
            return zeros(0, v.shape[1])
        return mul(self.inv, rows_of(v, self.rows))

    def exact(self, v):
        c = self.of(v)
        if not equal(mul(self.basis, c), v):
            raise ValueError("vector not in span")
        return c
