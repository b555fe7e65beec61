"""Exact scalar and matrix kernel.

A field descriptor is an int: ``0`` means the rationals (entries are
``fractions.Fraction``) and a prime ``p`` means GF(p) (entries are residues in
``range(p)``).  Matrices are immutable; every function here is pure.

Column indices are 0-based in code.  Text formats and displays use the 1-based
labels common in matroid notation.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm, prod

from .errors import (
    AllZero,
    BadShape,
    NonIntegerEntries,
    NonSquare,
    RankDeficient,
    UnsupportedField,
)

Q = 0


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_field(field):
    if field != Q and not is_prime(field):
        raise UnsupportedField(f"field modulus {field} is not prime")
    return field


def field_name(field):
    return "Q" if field == Q else f"Fp:{field}"


def coerce(x, field):
    """Convert ``x`` (int, Fraction, or "a/b" string) to a scalar of ``field``."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    if field == Q:
        return Fraction(x)
    x = Fraction(x)
    if x.denominator % field == 0:
        raise ZeroDivisionError(f"denominator divisible by {field}")
    return x.numerator * pow(x.denominator, -1, field) % field


def scalar_str(x):
    return str(x)


class Matrix:
    """Immutable dense matrix over Q or GF(p)."""

    __slots__ = ("rows", "field")

    def __init__(self, rows, field=Q):
        check_field(field)
        rows = tuple(tuple(coerce(x, field) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise BadShape("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise BadShape("ragged rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n, field=Q):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def diag(cls, values, field=Q):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.field))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}], {field_name(self.field)})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self, idx):
        idx = list(idx)
        return Matrix([[r[j] for j in idx] for r in self.rows], self.field)

    def transpose(self):
        return Matrix(list(zip(*self.rows)), self.field)

    def is_integer(self):
        return self.field == Q and all(x.denominator == 1 for r in self.rows for x in r)

    def int_rows(self):
        if not self.is_integer():
            raise NonIntegerEntries("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.rows]

    def __matmul__(self, other):
        if self.field != other.field:
            raise UnsupportedField("field mismatch")
        if self.ncols != other.nrows:
            raise BadShape(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows]
        return Matrix(out, self.field)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.rows], self.field)

    def scale(self, c):
        return Matrix([[c * x for x in r] for r in self.rows], self.field)

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise NonSquare("inverse of a non-square matrix")
        p = self.field
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if piv is None:
                raise RankDeficient("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = _inv(aug[c][c], p)
            aug[c] = [_red(x * inv, p) for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [_red(a - f * b, p) for a, b in zip(aug[i], aug[c])]
        return Matrix([r[n:] for r in aug], p)

    def power(self, k):
        """Matrix power; negative ``k`` uses the inverse, ``k == 0`` gives I."""
        if self.nrows != self.ncols:
            raise NonSquare("power of a non-square matrix")
        base = self.inverse() if k < 0 else self
        out = Matrix.identity(self.nrows, self.field)
        for _ in range(abs(k)):
            out = out @ base
        return out


def _inv(x, p):
    return 1 / Fraction(x) if p == Q else pow(x, -1, p)


def _red(x, p):
    return x if p == Q else x % p


# ---------------------------------------------------------------- integer kernels

def int_det(rows):
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def int_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                p = pr[c]
                a[i] = [x * p - f * y for x, y in zip(a[i], pr)]
        r += 1
        if r == len(a):
            break
    return r


def mod_det(rows, p):
    a = [[x % p for x in r] for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def mod_rank(rows, p):
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    r = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        for i in range(r + 1, len(a)):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def cleared_rows(m):
    """Scale each row of a rational matrix to integers.

    Returns ``(int_rows, scale)`` where ``scale`` is the product of the row
    multipliers, so det(columns I of m) == int_det(columns I of int_rows) / scale.
    """
    out = []
    scale = 1
    for r in m.rows:
        mult = lcm(*(x.denominator for x in r))
        out.append([int(x * mult) for x in r])
        scale *= mult
    return out, scale


def minor(rows, row_idx, col_idx, field=Q):
    sub = [[rows[i][j] for j in col_idx] for i in row_idx]
    return int_det(sub) if field == Q else mod_det(sub, field)


# ---------------------------------------------------------------- determinants

def det(m):
    if m.nrows != m.ncols:
        raise NonSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    if m.field != Q:
        return mod_det(m.rows, m.field)
    rows, scale = cleared_rows(m)
    return Fraction(int_det(rows), scale)


def rank(m):
    if m.field != Q:
        return mod_rank(m.rows, m.field)
    rows, _ = cleared_rows(m)
    return int_rank(rows)


# ---------------------------------------------------------------- Plücker vectors

@dataclass(frozen=True)
class PluckerVector:
    """Maximal minors indexed by sorted 0-based column tuples, in lex order."""

    d: int
    n: int
    coords: dict
    field: int = Q

    def __post_init__(self):
        check_field(self.field)
        object.__setattr__(self, "coords", {tuple(k): coerce(v, self.field) for k, v in self.coords.items()})

    def __getitem__(self, index):
        return self.coords[tuple(sorted(index))]

    def keys(self):
        return list(self.coords)

    def values(self):
        return list(self.coords.values())

    def support(self):
        return frozenset(k for k, v in self.coords.items() if v != 0)

    def is_zero(self):
        return all(v == 0 for v in self.coords.values())


def plucker(m):
    d, n = m.shape
    if d > n:
        raise BadShape(f"need d <= N, got {d}x{n}")
    if m.field == Q:
        rows, scale = cleared_rows(m)
        coords = {I: Fraction(int_det([[r[j] for j in I] for r in rows]), scale)
                  for I in combinations(range(n), d)}
    else:
        coords = {I: mod_det([[r[j] for j in I] for r in m.rows], m.field)
                  for I in combinations(range(n), d)}
    if all(v == 0 for v in coords.values()):
        raise RankDeficient(f"matrix has rank < {d}")
    return PluckerVector(d, n, coords, m.field)


# ---------------------------------------------------------------- gcd utilities

def gcd_of(xs):
    xs = list(xs)
    if not xs or all(x == 0 for x in xs):
        raise AllZero("gcd of an empty or all-zero list")
    return reduce(gcd, (abs(int(x)) for x in xs))


# ---------------------------------------------------------------- Hermite normal form

@dataclass(frozen=True)
class HnfResult:
    transform: Matrix
    permutation: tuple
    hnf: Matrix
    rank: int


def _pivot_columns(rows, preferred=()):
    chosen = []
    cur = 0
    for j in list(preferred) + [j for j in range(len(rows[0])) if j not in preferred]:
        trial = chosen + [j]
        r = int_rank([[row[c] for c in trial] for row in rows])
        if r > cur:
            chosen.append(j)
            cur = r
        elif j in preferred:
            raise RankDeficient(f"preferred columns are dependent at column {j + 1}")
    return chosen


def hnf(m, basis=None):
    """Hermite normal form ``U @ m[:, perm]`` of an integer matrix.

    ``basis`` (0-based column indices, optional) is moved to the front in the
    given order; otherwise pivot columns are picked greedily left to right.
    The first ``rank`` columns of the result are upper triangular with each
    diagonal entry strictly larger than the other (non-negative) entries of
    its column.
    """
    a = m.int_rows()
    d, n = m.shape
    preferred = list(basis or ())
    pivots = _pivot_columns(a, preferred)
    r = len(pivots)
    perm = tuple(pivots + [j for j in range(n) if j not in pivots])
    h = [[row[j] for j in perm] for row in a]
    u = [[int(i == j) for j in range(d)] for i in range(d)]

    def addrow(dst, src, f):
        h[dst] = [x - f * y for x, y in zip(h[dst], h[src])]
        u[dst] = [x - f * y for x, y in zip(u[dst], u[src])]

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    for c in range(r):
        while True:
            nz = [i for i in range(c, d) if h[i][c] != 0]
            best = min(nz, key=lambda i: abs(h[i][c]))
            if best != c:
                swap(best, c)
            done = True
            for i in range(c + 1, d):
                if h[i][c]:
                    addrow(i, c, h[i][c] // h[c][c])
                    done = done and h[i][c] == 0
            if done:
                break
        if h[c][c] < 0:
            h[c] = [-x for x in h[c]]
            u[c] = [-x for x in u[c]]
        for i in range(c):
            addrow(i, c, h[i][c] // h[c][c])
    return HnfResult(Matrix(u), perm, Matrix(h), r)


# ---------------------------------------------------------------- Smith normal form

def smith(rows):
    """Smith normal form of an integer matrix: ``(U, S, V)`` with ``U A V = S``.

    ``S`` is diagonal with non-negative entries, each dividing the next.
    Everything is returned as plain lists of ints.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def rowop(dst, src, f):
        a[dst] = [x - f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - f * y for x, y in zip(u[dst], u[src])]

    def colop(dst, src, f):
        for r in a:
            r[dst] -= f * r[src]
        for r in v:
            r[dst] -= f * r[src]

    def rowswap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def colswap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        rowswap(t, i0)
        colswap(t, j0)
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    rowop(i, t, a[i][t] // a[t][t])
            for j in range(t + 1, n):
                if a[t][j]:
                    colop(j, t, a[t][j] // a[t][t])
            rest = [(abs(a[i][t]), i, "r") for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), j, "c") for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    rowswap(t, k)
                else:
                    colswap(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            # pull the offending row into row t; its entry in column t is 0
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
            u[t] = [x + y for x, y in zip(u[t], u[bad[0]])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def lattice_index(rows):
    """gcd of the maximal non-vanishing minors (size = rank) of an integer matrix.

    For columns spanning a rank-r lattice L this is |(span_R(L) ∩ Z^d) / L|.
    Returns ``(rank, index)``; the empty column set gives ``(0, 1)``.
    """
    if not rows or not rows[0]:
        return 0, 1
    _, s, _ = smith(rows)
    diag = [s[i][i] for i in range(min(len(s), len(s[0]))) if s[i][i]]
    return len(diag), prod(diag)


def minors_gcd(rows, size):
    """gcd of all ``size``-by-``size`` minors (0 if all vanish)."""
    if size == 0:
        return 1
    g = 0
    nrows, ncols = len(rows), len(rows[0])
    for ri in combinations(range(nrows), size):
        for ci in combinations(range(ncols), size):
            g = gcd(g, minor(rows, ri, ci))
            if g == 1:
                return 1
    return g
