"""Matroid of a represented list: rank oracle, minors, bases, U(2,4) search.

Elements are 0-based column indices of the source matrix.  A view is the minor
``(source / contracted) | restricted``.
"""

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from ._config import cap
from .errors import OutOfGroundSet, TooLarge, UnsupportedField
from .exactmat import Q, cleared_rows, int_det, int_rank, mod_det, mod_rank


@dataclass(frozen=True)
class U24Witness:
    inner: tuple
    context: tuple
    certificate: tuple  # the six values in pair order 12,13,14,23,24,34 of ``inner``


class MatroidView:
    """The minor of the column matroid of ``source`` given by contraction and restriction."""

    def __init__(self, source, contracted=(), restricted=None):
        self.source = source
        n = source.ncols
        self.contracted = tuple(sorted(set(contracted)))
        if any(not 0 <= j < n for j in self.contracted):
            raise OutOfGroundSet("contracted column out of range")
        if restricted is None:
            restricted = [j for j in range(n) if j not in self.contracted]
        self.ground = tuple(sorted(set(restricted)))
        if any(not 0 <= j < n or j in self.contracted for j in self.ground):
            raise OutOfGroundSet("restricted set must avoid the contracted columns")
        if source.field == Q:
            self._rows, _ = cleared_rows(source)
        else:
            self._rows = [list(r) for r in source.rows]
        self._cache = {}
        self._base = self._raw_rank(self.contracted)

    @property
    def field(self):
        return self.source.field

    def _raw_rank(self, cols):
        key = frozenset(cols)
        r = self._cache.get(key)
        if r is None:
            sub = [[row[j] for j in sorted(key)] for row in self._rows]
            if not key:
                r = 0
            elif self.field == Q:
                r = int_rank(sub)
            else:
                r = mod_rank(sub, self.field)
            self._cache[key] = r
        return r

    def rank_of(self, s):
        s = set(s)
        if not s <= set(self.ground):
            raise OutOfGroundSet(f"{sorted(s - set(self.ground))} not in the ground set")
        return self._raw_rank(s | set(self.contracted)) - self._base

    def rank(self):
        return self.rank_of(self.ground)

    def is_independent(self, s):
        return self.rank_of(s) == len(set(s))

    def minor(self, contract=(), restrict=None):
        contracted = set(self.contracted) | set(contract)
        if restrict is None:
            restrict = [e for e in self.ground if e not in contracted]
        return MatroidView(self.source, contracted, restrict)

    def raw_det(self, cols):
        """Determinant of the listed source columns, up to the positive row scaling."""
        sub = [[row[j] for j in cols] for row in self._rows]
        return int_det(sub) if self.field == Q else mod_det(sub, self.field)


def view(m, contracted=(), restricted=None):
    return MatroidView(m, contracted, restricted)


def _as_view(v):
    return v if isinstance(v, MatroidView) else MatroidView(v)


def bases(v):
    v = _as_view(v)
    if len(v.ground) > cap("ground"):
        raise TooLarge(f"ground set of {len(v.ground)} exceeds cap {cap('ground')}")
    r = v.rank()
    return [B for B in combinations(v.ground, r) if v.rank_of(B) == r]


def basis_exchange_graph(v):
    bs = bases(v)
    g = nx.Graph()
    g.add_nodes_from(bs)
    sets = [frozenset(b) for b in bs]
    for i, j in combinations(range(len(bs)), 2):
        if len(sets[i] ^ sets[j]) == 2:
            g.add_edge(bs[i], bs[j])
    return g


def _certificate(v, inner, context):
    # square out the minors: a basis C of the contracted part, the pair, then unit vectors
    d = v.source.nrows
    c = []
    for j in list(v.contracted) + list(context):
        if v._raw_rank(c + [j]) > len(c):
            c.append(j)
    rows = v._rows
    cols = [[row[j] for row in rows] for j in c + list(inner)]
    units = []
    for u in range(d):
        e = [int(i == u) for i in range(d)]
        trial = cols + units + [e]
        t = [list(x) for x in zip(*trial)]
        rk = int_rank(t) if v.field == Q else mod_rank(t, v.field)
        if rk == len(c) + 2 + len(units) + 1:
            units.append(e)
        if len(units) == d - len(c) - 2:
            break
    out = []
    for i, j in combinations(inner, 2):
        block = [[row[x] for x in c] + [row[i], row[j]] for row in rows]
        mat = [b + [e[k] for e in units] for k, b in enumerate(block)]
        out.append(int_det(mat) if v.field == Q else mod_det(mat, v.field))
    return tuple(out)


def find_u24(v):
    """Lexicographically first U(2,4) minor, or ``None``.

    Contexts J range over independent sets of size rank - 2: any U(2,4) minor
    extends to one of these by adding elements outside the span of J and I.
    """
    v = _as_view(v)
    if len(v.ground) > cap("ground"):
        raise TooLarge(f"ground set of {len(v.ground)} exceeds cap {cap('ground')}")
    r = v.rank()
    if r < 2 or len(v.ground) < r + 2:
        return None
    for J in combinations(v.ground, r - 2):
        if v.rank_of(J) != r - 2:
            continue
        rest = [e for e in v.ground if e not in J]
        # elements that are not loops in M/J, then pairs that are independent in M/J
        live = [e for e in rest if v.rank_of(J + (e,)) == r - 1]
        for inner in combinations(live, 4):
            if all(v.rank_of(J + p) == r for p in combinations(inner, 2)):
                return U24Witness(inner, J, _certificate(v, inner, J))
    return None


def is_regular(v):
    v = _as_view(v)
    if v.field == 2:
        raise UnsupportedField("regularity over characteristic 2 needs Fano-minor tests")
    return find_u24(v) is None
