"""Totally unimodular recovery, X = T A D factorizations and powered matrices.

All routines here work over the rationals.  A factorization is unique only up
to ``(lambda T) A (D / lambda)`` and signs; choices are pinned so that outputs
are deterministic: the lexicographically first basis is used throughout and
the first scaling factor is 1.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._config import cap
from .errors import (
    BadShape,
    EvenKForOddExact,
    InconsistentRatios,
    LabelledMatroidMismatch,
    NotRegular,
    RankDeficient,
    TooLarge,
    UnsupportedField,
)
from .exactmat import Q, Matrix, check_field, det, int_det, plucker, rank
from .matroid import MatroidView, basis_exchange_graph


@dataclass(frozen=True)
class TADFactorization:
    T: Matrix
    A: Matrix
    D: Matrix
    basis: tuple
    source: Matrix

    @property
    def delta(self):
        return tuple(self.D[j, j] for j in range(self.D.nrows))

    def product(self):
        return self.T @ self.A @ self.D


def _one_based(idx):
    return ",".join(str(i + 1) for i in idx)


def _require_q(x):
    if x.field != Q:
        raise UnsupportedField("decompositions are computed over Q")


def _require_full_rank(x):
    d, n = x.shape
    if d > n:
        raise BadShape(f"need d <= N, got {d}x{n}")
    if rank(x) < d:
        raise RankDeficient(f"matrix has rank < {d}")


def first_basis(x):
    chosen = []
    for j in range(x.ncols):
        if rank(x.columns(chosen + [j])) > len(chosen):
            chosen.append(j)
    return tuple(chosen)


def is_totally_unimodular(a):
    d, n = a.shape
    if n > cap("tu"):
        raise TooLarge(f"{n} columns exceed the TU check cap {cap('tu')}")
    if not a.is_integer():
        return False
    rows = a.int_rows()
    for size in range(1, min(d, n) + 1):
        for ri in combinations(range(d), size):
            for ci in combinations(range(n), size):
                if int_det([[rows[i][j] for j in ci] for i in ri]) not in (-1, 0, 1):
                    return False
    return True


def _support(x):
    return plucker(x).support()


def recover_tu(x):
    """A totally unimodular matrix with the labelled matroid of ``x``.

    Raises ``NotRegular`` naming the entry or minor that rules one out.
    """
    _require_q(x)
    _require_full_rank(x)
    d, n = x.shape
    if n > cap("tu"):
        raise TooLarge(f"{n} columns exceed the TU check cap {cap('tu')}")
    b0 = first_basis(x)
    xp = x.columns(b0).inverse() @ x
    nonbasic = [j for j in range(n) if j not in b0]

    # spanning forest of the bipartite support graph; forest entries become +1
    r = [None] * d
    c = {}
    adj_row = {a: [j for j in nonbasic if xp[a, j] != 0] for a in range(d)}
    adj_col = {j: [a for a in range(d) if xp[a, j] != 0] for j in nonbasic}
    for root in range(d):
        if r[root] is not None:
            continue
        r[root] = Fraction(1)
        queue = deque([("r", root)])
        while queue:
            kind, u = queue.popleft()
            if kind == "r":
                for j in adj_row[u]:
                    if j not in c:
                        c[j] = 1 / (r[u] * xp[u, j])
                        queue.append(("c", j))
            else:
                for a in adj_col[u]:
                    if r[a] is None:
                        r[a] = 1 / (xp[a, u] * c[u])
                        queue.append(("r", a))
    for j in nonbasic:
        c.setdefault(j, Fraction(1))
    for a in range(d):
        c[b0[a]] = 1 / r[a]

    rows = []
    for a in range(d):
        row = []
        for j in range(n):
            v = r[a] * xp[a, j] * c[j]
            if v not in (0, 1, -1):
                raise NotRegular(
                    f"scaled entry ({a + 1},{j + 1}) is {v}, not 0 or +-1",
                    detail={"row": a + 1, "column": j + 1, "value": v},
                )
            row.append(v)
        rows.append(row)
    a_mat = Matrix(rows)
    for size in range(2, d + 1):
        for ri in combinations(range(d), size):
            for ci in combinations(range(n), size):
                m = int_det([[int(rows[i][j]) for j in ci] for i in ri])
                if m not in (-1, 0, 1):
                    raise NotRegular(
                        f"subdeterminant {m} on rows {[i + 1 for i in ri]}, columns {[j + 1 for j in ci]}",
                        detail={"rows": _one_based(ri), "columns": _one_based(ci), "value": m},
                    )
    if _support(a_mat) != _support(x):
        raise NotRegular("scaled matrix does not represent the same matroid",
                         detail={"support": "mismatch"})
    return a_mat


def _normalized(t, a, dvals, basis, x):
    d, n = x.shape
    first = next((j for j in range(n) if any(x[i, j] for i in range(d))), None)
    lam = dvals[first] if first is not None else Fraction(1)
    t = t.scale(lam)
    dvals = [v / lam if any(x[i, j] for i in range(d)) else Fraction(1) for j, v in enumerate(dvals)]
    return TADFactorization(t, a, Matrix.diag(dvals), tuple(basis), x)


def _tad_small(x):
    d, n = x.shape
    cols = [x.column(j) for j in range(n)]
    nonzero = [j for j in range(n) if any(cols[j])]
    if d == 1:
        t0 = cols[nonzero[0]][0]
        a = Matrix([[1 if j in nonzero else 0 for j in range(n)]])
        dvals = [cols[j][0] / t0 if j in nonzero else Fraction(1) for j in range(n)]
        return _normalized(Matrix([[t0]]), a, dvals, (nonzero[0],), x)

    # rank 2: at most three parallel classes u, v, w with w = a'u + b'v
    reps = []
    cls = {}
    for j in nonzero:
        for k, rj in enumerate(reps):
            if cols[j][0] * cols[rj][1] - cols[j][1] * cols[rj][0] == 0:
                cls[j] = k
                break
        else:
            if len(reps) == 3:
                raise NotRegular(f"four pairwise independent columns (column {j + 1} is the fourth)",
                                 detail={"columns": _one_based(tuple(reps) + (j,))})
            cls[j] = len(reps)
            reps.append(j)
    u, v = cols[reps[0]], cols[reps[1]]
    if len(reps) == 3:
        w = cols[reps[2]]
        coef = Matrix([[u[0], v[0]], [u[1], v[1]]]).inverse() @ Matrix([[w[0]], [w[1]]])
        ap, bp = coef[0, 0], coef[1, 0]
    else:
        ap, bp = Fraction(1), Fraction(1)
    t = Matrix([[ap * u[0], bp * v[0]], [ap * u[1], bp * v[1]]])
    a_cols = {0: (1, 0), 1: (0, 1), 2: (1, 1)}
    dvals = []
    a_rows = [[], []]
    for j in range(n):
        if j not in cls:
            a_rows[0].append(0)
            a_rows[1].append(0)
            dvals.append(Fraction(1))
            continue
        k = cls[j]
        rep = cols[reps[k]]
        i = 0 if rep[0] != 0 else 1
        scale = cols[j][i] / rep[i]
        dvals.append(scale / (ap, bp, Fraction(1))[k])
        a_rows[0].append(a_cols[k][0])
        a_rows[1].append(a_cols[k][1])
    return _normalized(t, Matrix(a_rows), dvals, (reps[0], reps[1]), x)


def tad(x, a=None):
    """Factor ``x = T A D`` with ``A`` totally unimodular and ``D`` diagonal.

    With ``a`` given, that matrix is used as ``A``; otherwise rank one and two
    use the column-class normal form and higher ranks use ``recover_tu``.
    Scaling ratios are propagated across basis exchanges from the first
    element of each connected component.
    """
    _require_q(x)
    _require_full_rank(x)
    d, n = x.shape
    if a is None and d <= 2:
        return _tad_small(x)
    if a is None:
        a = recover_tu(x)
    elif a.shape != x.shape:
        raise InconsistentRatios(f"A has shape {a.shape}, X has {x.shape}")
    if _support(a) != _support(x):
        raise InconsistentRatios("A and X do not represent the same labelled matroid")

    px, pa = plucker(x), plucker(a)
    g = basis_exchange_graph(MatroidView(x))
    ratio = {}
    for b1, b2 in g.edges():
        for bb, bb2 in ((b1, b2), (b2, b1)):
            (i,) = set(bb) - set(bb2)
            (j,) = set(bb2) - set(bb)
            q = px[bb] * pa[bb2] / (px[bb2] * pa[bb])
            if ratio.setdefault((i, j), q) != q:
                raise InconsistentRatios(
                    f"ratio delta_{i + 1}/delta_{j + 1} is both {ratio[(i, j)]} and {q}")
    nbrs = {}
    for i, j in ratio:
        nbrs.setdefault(i, []).append(j)
    delta = [None] * n
    for root in range(n):
        if delta[root] is not None:
            continue
        delta[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in nbrs.get(i, ()):
                if delta[j] is None:
                    delta[j] = delta[i] / ratio[(i, j)]
                    queue.append(j)
    for (i, j), q in ratio.items():
        if delta[i] / delta[j] != q:
            raise InconsistentRatios(f"ratio delta_{i + 1}/delta_{j + 1} disagrees around a cycle")

    basis = first_basis(x)
    ab = a.columns(basis) @ Matrix.diag([delta[j] for j in basis])
    t = x.columns(basis) @ ab.inverse()
    fact = TADFactorization(t, a, Matrix.diag(delta), basis, x)
    if fact.product() != x:
        raise InconsistentRatios("T A D does not reproduce X")
    return fact


def _sgn(v):
    return (v > 0) - (v < 0)


def _signed_power(v, k):
    # sgn(v) |v|^k, keeping 0 at 0
    return _sgn(v) * abs(v) ** k if v else v


MODES = ("up-to-sign", "odd-exact", "sign-preserving")


def power_matrix(x, k, mode="up-to-sign"):
    """A matrix whose maximal minors are the k-th powers of those of ``x``.

    ``up-to-sign`` and ``odd-exact`` return ``T^k A D^k``; for odd ``k`` the
    powers are exact.  ``sign-preserving`` keeps every minor's sign.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if mode == "odd-exact" and k % 2 == 0:
        raise EvenKForOddExact(f"odd-exact mode needs odd k, got {k}")
    f = tad(x)
    if mode == "sign-preserving":
        d = x.nrows
        tt = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        tt[0][0] = Fraction(_signed_power(det(f.T), k))
        return Matrix(tt) @ f.A @ Matrix.diag([_signed_power(v, k) for v in f.delta])
    return f.T.power(k) @ f.A @ f.D.power(k)


def power_two(x1, x2, k1, k2, sign_preserving=False):
    """A matrix with |minors| equal to |minors of x1|^k1 |minors of x2|^k2.

    Both inputs are factored against one totally unimodular matrix.  With
    ``sign_preserving`` the minors also carry the signs of ``x1``.
    """
    if x1.shape != x2.shape:
        raise LabelledMatroidMismatch(f"shapes {x1.shape} and {x2.shape} differ")
    if k1 < 0 or k2 < 0:
        raise ValueError("exponents must be non-negative")
    _require_q(x1)
    _require_q(x2)
    _require_full_rank(x1)
    _require_full_rank(x2)
    if _support(x1) != _support(x2):
        raise LabelledMatroidMismatch("the two matrices have different zero patterns of minors")
    a = recover_tu(x1)
    f1, f2 = tad(x1, a), tad(x2, a)
    if sign_preserving:
        d = x1.nrows
        tt = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        t1, t2 = det(f1.T), det(f2.T)
        tt[0][0] = _sgn(t1) * abs(t1) ** k1 * abs(t2) ** k2
        dd = [_sgn(u) * abs(u) ** k1 * abs(v) ** k2 for u, v in zip(f1.delta, f2.delta)]
        return Matrix(tt) @ a @ Matrix.diag(dd)
    return (f1.T.power(k1) @ f2.T.power(k2) @ a
            @ f1.D.power(k1) @ f2.D.power(k2))


@dataclass(frozen=True)
class CounterexamplePair:
    p: int
    k: int
    a: int
    x: Matrix
    xk: Matrix


def counterexample_matrix(a, p):
    return Matrix([[1, 0, 1, 1], [0, 1, 1, a]], p)


def counterexample_fp(p, k):
    """First ``a`` in GF(p) giving two U(2,4) matrices whose minors agree up to sign after powering.

    Returns ``None`` when no such ``a`` exists (always for p = 2).
    """
    check_field(p)
    if p == Q:
        raise UnsupportedField("a prime modulus is required")
    for a in range(2, p):
        ak = pow(a, k, p)
        if ak in (0, 1):
            continue
        lhs = pow(a - 1, k, p)
        if lhs not in ((ak - 1) % p, (1 - ak) % p):
            continue
        x, xk = counterexample_matrix(a, p), counterexample_matrix(ak, p)
        px, pk = plucker(x), plucker(xk)
        ok = all(px[I] != 0 and pk[I] != 0 for I in px.keys())
        ok = ok and all(pk[I] in (pow(px[I], k, p), (-pow(px[I], k, p)) % p) for I in px.keys())
        if ok:
            return CounterexamplePair(p, k, a, x, xk)
    return None

