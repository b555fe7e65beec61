"""Grassmann-Plücker relations, entrywise powering, sign-search decomposability.

Brackets are sorted 0-based index tuples; a bracket with a repeated index is
zero and an odd sorting permutation flips the sign of its term.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd

from ._config import cap
from .errors import BadShape, TooLarge
from .exactmat import Q, Matrix, PluckerVector, plucker


def sort_bracket(idx):
    """Return ``(sign, sorted tuple)``; sign is 0 when an index repeats."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def var_name(bracket, n):
    sep = "," if n >= 10 else ""
    return "m_{" + sep.join(str(i + 1) for i in bracket) + "}"


@dataclass(frozen=True)
class GPRelation:
    """A quadric sum of ``coef * [left] * [right]`` over its terms."""

    terms: tuple

    def evaluate(self, pv):
        return sum(c * pv.coords[l] * pv.coords[r] for c, l, r in self.terms)

    def brackets(self):
        return {b for _, l, r in self.terms for b in (l, r)}

    def render(self, n):
        out = []
        for i, (c, l, r) in enumerate(self.terms):
            mono = f"{var_name(l, n)}*{var_name(r, n)}"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}"
            if i == 0:
                out.append(mono if c > 0 else f"-{mono}")
            else:
                out.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(out)


def _canonical(collected):
    terms = sorted((l, r, c) for (l, r), c in collected.items() if c != 0)
    if not terms:
        return None
    g = reduce(gcd, (abs(c) for _, _, c in terms))
    s = 1 if terms[0][2] > 0 else -1
    return GPRelation(tuple((s * c // g, l, r) for l, r, c in terms))


def _relation(b, bp):
    # [b_1 ... b_d][b'_1 ... b'_d] - sum_i [b'_i b_2 ... b_d][b'_1 .. b_1 (at i) .. b'_d]
    collected = {}

    def add(coef, left, right):
        s1, l = sort_bracket(left)
        s2, r = sort_bracket(right)
        if s1 == 0 or s2 == 0:
            return
        key = (l, r) if l <= r else (r, l)
        collected[key] = collected.get(key, 0) + coef * s1 * s2

    add(1, b, bp)
    for i in range(len(bp)):
        left = (bp[i],) + tuple(b[1:])
        right = bp[:i] + (b[0],) + bp[i + 1:]
        add(-1, left, right)
    return _canonical(collected)


def gp_relations(d, n):
    if not 0 < d <= n:
        raise BadShape(f"need 0 < d <= n, got d={d}, n={n}")
    return list(_gp_relations(d, n))


@lru_cache(maxsize=None)
def _gp_relations(d, n):
    seen = set()
    out = []
    for b1 in range(n):
        for tail in combinations([i for i in range(n) if i != b1], d - 1):
            for bp in combinations(range(n), d):
                rel = _relation((b1,) + tail, bp)
                if rel is not None and rel not in seen:
                    seen.add(rel)
                    out.append(rel)
    out.sort(key=lambda r: r.terms)
    return tuple(out)


def _nonzero(x, p):
    return (x if p == Q else x % p) != 0


def gp_verify(pv):
    return [rel for rel in gp_relations(pv.d, pv.n) if _nonzero(rel.evaluate(pv), pv.field)]


def power_pv(pv, k):
    """Entrywise k-th power with the convention 0^0 = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    p = pv.field

    def pw(x):
        if x == 0:
            return x
        return x ** k if p == Q else pow(x, k, p)

    return PluckerVector(pv.d, pv.n, {I: pw(x) for I, x in pv.coords.items()}, p)


@dataclass(frozen=True)
class SignWitness:
    """Signs (0 on zero coordinates) making the vector satisfy every relation.

    ``matrix`` is a representation reconstructed from the signed vector;
    ``certified`` records that its Plücker vector equals the signed vector up
    to the scalar fixed by the first nonzero coordinate.
    """

    signs: tuple
    matrix: Matrix
    certified: bool


def reconstruct(pv):
    """Matrix whose columns at the first nonzero bracket form the identity.

    Its Plücker vector is proportional to ``pv`` exactly when ``pv`` is
    decomposable.
    """
    p = pv.field
    i0 = next(I for I, x in pv.coords.items() if x != 0)
    inv = 1 / pv.coords[i0] if p == Q else pow(pv.coords[i0], -1, p)
    rows = []
    for a in range(pv.d):
        row = []
        for j in range(pv.n):
            s, key = sort_bracket(i0[:a] + (j,) + i0[a + 1:])
            row.append(0 if s == 0 else s * pv.coords[key] * inv)
        rows.append(row)
    return Matrix(rows, p), pv.coords[i0]


def is_decomposable(pv):
    if pv.is_zero():
        return False
    m, scale = reconstruct(pv)
    q = plucker(m)
    p = pv.field
    if p == Q:
        return all(q.coords[I] * scale == x for I, x in pv.coords.items())
    return all((q.coords[I] * scale - x) % p == 0 for I, x in pv.coords.items())


def sign_decomposable(pv):
    """Search sign vectors so that the signed vector satisfies every relation.

    Returns a ``SignWitness`` or ``None``.  The first nonzero coordinate keeps
    sign +; the search is depth-first in lexicographic coordinate order.
    """
    if len(pv.coords) > cap("sign_search"):
        raise TooLarge(f"{len(pv.coords)} coordinates exceed sign-search cap {cap('sign_search')}")
    if pv.is_zero():
        return None
    p = pv.field
    keys = list(pv.coords)
    pos = {I: i for i, I in enumerate(keys)}
    vals = [pv.coords[I] for I in keys]
    free = [i for i, x in enumerate(vals) if x != 0]
    order = {i: t for t, i in enumerate(free)}
    # each relation is checked once its last nonzero coordinate has a sign
    due = [[] for _ in free]
    for rel in gp_relations(pv.d, pv.n):
        live = [(c, pos[l], pos[r]) for c, l, r in rel.terms if vals[pos[l]] != 0 and vals[pos[r]] != 0]
        if live:
            last = max(max(order[a], order[b]) for _, a, b in live)
            due[last].append(live)

    signs = [0] * len(vals)

    def ok(t):
        for live in due[t]:
            s = sum(c * signs[a] * vals[a] * signs[b] * vals[b] for c, a, b in live)
            if _nonzero(s, p):
                return False
        return True

    def search(t):
        if t == len(free):
            return True
        choices = (1,) if t == 0 else (1, -1)
        for s in choices:
            signs[free[t]] = s
            if ok(t) and search(t + 1):
                return True
        signs[free[t]] = 0
        return False

    if not search(0):
        return None
    signed = PluckerVector(pv.d, pv.n,
                           {I: (s * x if p == Q else s * x % p) for I, s, x in zip(keys, signs, vals)}, p)
    m, _ = reconstruct(signed)
    return SignWitness(tuple(signs), m, is_decomposable(signed))


@dataclass(frozen=True)
class IdealGenerators:
    d: int
    n: int
    quadrics: tuple
    monomials: tuple

    def lines(self):
        return [q.render(self.n) for q in self.quadrics] + list(self.monomials)


def rgr_monomials(d, n):
    out = []
    seen = set()
    for prefix in combinations(range(n), d - 2) if d >= 2 else ():
        rest = [i for i in range(n) if i not in prefix]
        for four in combinations(rest, 4):
            brackets = [tuple(sorted(prefix + pair)) for pair in combinations(four, 2)]
            text = "*".join(var_name(b, n) for b in brackets)
            if text not in seen:
                seen.add(text)
                out.append(text)
    return out


def rgr_generators(d, n):
    if not 0 < d <= n:
        raise BadShape(f"need 0 < d <= n, got d={d}, n={n}")
    return IdealGenerators(d, n, tuple(gp_relations(d, n)), tuple(rgr_monomials(d, n)))
