"""Arithmetic matroids of lists in Z^d + Z_q1 + ... + Z_qn.

Multiplicities are computed on the lift ``[[X, 0], [L, Q]]`` with
``Q = diag(q_1..q_n)``: for a subset S, m(S) is the index of the lattice
spanned by the columns S + Y inside its saturation, Y being the appended
torsion columns.  Element indices are 0-based.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod

from ._config import cap
from .errors import (
    ArimatError,
    BadShape,
    HasTorsion,
    LabelledMatroidMismatch,
    LoopEdge,
    NoMultiplicativeBasis,
    NonIntegerEntries,
    NotRegular,
    TooLarge,
)
from .exactmat import Matrix, hnf, lattice_index, smith
from .matroid import MatroidView, bases, find_u24, is_regular


def _ints(rows, what):
    out = []
    for r in rows:
        row = []
        for x in r:
            if int(x) != x:
                raise NonIntegerEntries(f"{what} entry {x} is not an integer")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


class GroupList:
    """A list of N elements of Z^d + Z_q1 + ... + Z_qn, stored column-wise."""

    __slots__ = ("free", "torsion_rows", "moduli", "ncols")

    def __init__(self, free, torsion_rows=(), moduli=(), ncols=None):
        free = _ints(free, "free")
        torsion = _ints(torsion_rows, "torsion")
        moduli = tuple(int(q) for q in moduli)
        if len(moduli) != len(torsion):
            raise BadShape("one modulus per torsion row is required")
        if any(q < 1 for q in moduli):
            raise BadShape("moduli must be positive")
        widths = {len(r) for r in free + torsion}
        if ncols is None:
            if len(widths) != 1:
                raise BadShape("rows must be non-empty and of equal length")
            ncols = widths.pop()
        elif widths - {ncols}:
            raise BadShape("rows must all have ncols entries")
        torsion = tuple(tuple(x % q for x in r) for r, q in zip(torsion, moduli))
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "torsion_rows", torsion)
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("GroupList is immutable")

    @classmethod
    def from_matrix(cls, m):
        return cls(m.int_rows())

    def __eq__(self, other):
        return isinstance(other, GroupList) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return self.free, self.torsion_rows, self.moduli, self.ncols

    def __repr__(self):
        return f"GroupList(free={self.free}, torsion_rows={self.torsion_rows}, moduli={self.moduli})"

    @property
    def d(self):
        return len(self.free)

    @property
    def n(self):
        return len(self.moduli)

    def has_torsion(self):
        return bool(self.moduli)


def lift(gl):
    """The torsion-free lift ``[[X, 0], [L, Q]]`` and the indices Y of its last n columns."""
    n, big_n = gl.n, gl.ncols
    rows = [list(r) + [0] * n for r in gl.free]
    for i, (r, q) in enumerate(zip(gl.torsion_rows, gl.moduli)):
        rows.append(list(r) + [q if j == i else 0 for j in range(n)])
    return Matrix(rows), tuple(range(big_n, big_n + n))


def underlying_view(gl):
    m, y = lift(gl)
    return MatroidView(m, contracted=y, restricted=range(gl.ncols))


class MultiplicityTable:
    """Rank and multiplicity of every subset of {0..N-1}, indexed by bitmask."""

    __slots__ = ("size", "rank", "m")

    def __init__(self, size, rank, m):
        if len(rank) != 1 << size or len(m) != 1 << size:
            raise BadShape(f"a table on {size} elements needs {1 << size} entries")
        if any(v < 1 for v in m):
            raise BadShape("multiplicities must be positive integers")
        self.size = size
        self.rank = tuple(rank)
        self.m = tuple(m)

    @staticmethod
    def mask(s):
        out = 0
        for e in s:
            out |= 1 << e
        return out

    @staticmethod
    def members(mask):
        return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)

    def rank_of(self, s):
        return self.rank[self.mask(s)]

    def m_of(self, s):
        return self.m[self.mask(s)]

    def power(self, k):
        return MultiplicityTable(self.size, self.rank, [v ** k for v in self.m])

    def __eq__(self, other):
        return (isinstance(other, MultiplicityTable) and self.size == other.size
                and self.rank == other.rank and self.m == other.m)

    def __repr__(self):
        return f"MultiplicityTable(size={self.size})"


def _lift_cols(gl):
    m, y = lift(gl)
    return m.int_rows(), y


def _index(rows, cols):
    return lattice_index([[r[j] for j in cols] for r in rows]) if cols else (0, 1)


def multiplicity(gl, s):
    rows, y = _lift_cols(gl)
    return _index(rows, sorted(set(s)) + list(y))[1]


def full_table(gl):
    if gl.ncols > cap("table"):
        raise TooLarge(f"{gl.ncols} elements exceed the table cap {cap('table')}")
    rows, y = _lift_cols(gl)
    n = gl.n
    ranks, ms = [], []
    for mask in range(1 << gl.ncols):
        r, idx = _index(rows, list(MultiplicityTable.members(mask)) + list(y))
        ranks.append(r - n)
        ms.append(idx)
    return MultiplicityTable(gl.ncols, ranks, ms)


def _first_multiplicative_basis(m):
    """Lexicographically first basis B of integer matrix ``m`` with m(B) = prod m({b}), and whether all are."""
    rows = m.int_rows()
    single = [_index(rows, [j])[1] for j in range(m.ncols)]
    first, every = None, True
    for b in bases(MatroidView(m)):
        if _index(rows, list(b))[1] == prod(single[j] for j in b):
            if first is None:
                first = b
        else:
            every = False
    return first, every


def find_multiplicative_basis(gl):
    if gl.has_torsion():
        raise HasTorsion("lift the list first; multiplicativity is checked on torsion-free lists")
    first, _ = _first_multiplicative_basis(lift(gl)[0])
    return first


@dataclass(frozen=True)
class Classification:
    """Classification computed on one lifting, ``"canonical"`` or ``"supplied"``."""

    regular: bool
    weakly_multiplicative: bool
    strongly_multiplicative: bool
    multiplicative_basis: tuple = None
    lift: str = "canonical"


def classify(gl, lifting=None):
    """Regularity and multiplicativity of a torsion-free lifting of ``gl``.

    ``lifting`` is an optional pair ``(matrix, Y)`` whose quotient by the
    columns Y must reproduce the arithmetic matroid of ``gl``; by default the
    canonical lift is used.
    """
    if lifting is None:
        m, _ = lift(gl)
        kind = "canonical"
    else:
        m, y = lifting
        if full_table(quotient(m.int_rows(), list(y))) != full_table(gl):
            raise LabelledMatroidMismatch("the lifting does not reproduce the list's arithmetic matroid")
        kind = "supplied"
    if m.ncols > cap("ground"):
        raise TooLarge(f"{m.ncols} lift columns exceed cap {cap('ground')}")
    first, every = _first_multiplicative_basis(m)
    return Classification(is_regular(m), first is not None, every, first, kind)


def quotient(rows, ycols):
    """The list of non-Y columns of an integer matrix in Z^R / <Y columns>.

    The quotient is presented through a Smith normal form of the Y block;
    moduli of 1 are dropped.
    """
    ncols = len(rows[0])
    keep = [j for j in range(ncols) if j not in set(ycols)]
    if not ycols:
        return GroupList([[r[j] for j in keep] for r in rows], ncols=len(keep))
    u, s, _ = smith([[r[j] for j in ycols] for r in rows])
    z = [[sum(u[i][t] * rows[t][j] for t in range(len(rows))) for j in keep] for i in range(len(rows))]
    free, torsion, moduli = [], [], []
    for i, zi in enumerate(z):
        si = s[i][i] if i < len(ycols) else 0
        if si == 0:
            free.append(zi)
        elif si > 1:
            torsion.append(zi)
            moduli.append(si)
    if not free and not torsion:
        # trivial group: a zero row in Z gives the same ranks and multiplicities
        free.append([0] * len(keep))
    return GroupList(free, torsion, moduli, ncols=len(keep))


def arith_power(gl, k):
    """A list whose arithmetic matroid is that of ``gl`` with m raised to the k-th power.

    Requires a regular canonical lift with a multiplicative basis.  Negative
    answers raise ``NotRegular`` (with a GP_2 certificate when the underlying
    matroid has a U(2,4) minor) or ``NoMultiplicativeBasis``.
    """
    from .decompose import recover_tu, tad
    from .gpcheck import power_nonrep_certificate

    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 1:
        return gl
    if gl.ncols > cap("table"):
        raise TooLarge(f"{gl.ncols} elements exceed the table cap {cap('table')}")
    if find_u24(underlying_view(gl)) is not None:
        cert = power_nonrep_certificate(gl, k)
        raise NotRegular("the underlying matroid has a U(2,4) minor", certificate=cert)
    m, y = lift(gl)
    if not is_regular(m):
        raise NotRegular("the underlying matroid is regular but its canonical lift is not")
    basis, _ = _first_multiplicative_basis(m)
    if basis is None:
        raise NoMultiplicativeBasis("the canonical lift has no multiplicative basis")

    res = hnf(m, basis)
    r = res.rank
    h = Matrix(res.hnf.rows[:r])
    hr = h.int_rows()
    if any(hr[i][j] for i in range(r) for j in range(r) if i != j):
        raise ArimatError("multiplicative basis did not give a diagonal Hermite form")
    f = tad(h, recover_tu(h))
    a = f.A.int_rows()
    # H = T A D with T diagonal, so (T^k A D^k)_ij = a_ij (H_ij / a_ij)^k is integral
    hk = [[a[i][j] * (hr[i][j] * a[i][j]) ** k if a[i][j] else 0 for j in range(m.ncols)]
          for i in range(r)]
    inv = {p: q for q, p in enumerate(res.permutation)}
    ordered = [[row[inv[j]] for j in range(m.ncols)] for row in hk]
    out = quotient(ordered, list(y))
    if full_table(out) != full_table(gl).power(k):
        raise ArimatError("powered list failed post-verification")
    return out


@dataclass(frozen=True)
class Violation:
    subset: tuple
    m: int
    expected: int


def gcd_consistency(t):
    """Dependent sets whose multiplicity is not the gcd over their maximal independent subsets."""
    if t.m[0] != 1:
        raise HasTorsion("the gcd formula applies to torsion-free tables (m of the empty set is 1)")
    out = []
    for mask in range(1 << t.size):
        s = MultiplicityTable.members(mask)
        r = t.rank[mask]
        if r == len(s):
            continue
        g = 0
        for b in combinations(s, r):
            bm = MultiplicityTable.mask(b)
            if t.rank[bm] == r:
                g = gcd(g, t.m[bm])
        if g != t.m[mask]:
            out.append(Violation(s, t.m[mask], g))
    return out


@dataclass(frozen=True)
class MoleculeCheck:
    R: tuple
    S: tuple
    F: tuple
    T: tuple
    rho: int
    passed: bool


@dataclass(frozen=True)
class A1Check:
    A: tuple
    e: int
    passed: bool


@dataclass(frozen=True)
class A2Check:
    R: tuple
    S: tuple
    lhs: int
    rhs: int
    passed: bool


@dataclass(frozen=True)
class AxiomReport:
    molecule_checks: tuple
    a1_checks: tuple
    a2_checks: tuple
    rank_ok: bool

    @property
    def passed(self):
        return self.rank_ok and all(c.passed for c in self.molecule_checks + self.a1_checks + self.a2_checks)


def _rank_axioms(t):
    full = (1 << t.size) - 1
    for a in range(1 << t.size):
        if not 0 <= t.rank[a] <= bin(a).count("1"):
            return False
        for e in range(t.size):
            if a >> e & 1:
                continue
            if t.rank[a | 1 << e] - t.rank[a] not in (0, 1):
                return False
        rest = full & ~a
        for b in _submasks(rest):
            if t.rank[a | b] + t.rank[a & b] > t.rank[a] + t.rank[b]:
                return False
    return True


def _submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def verify_axioms(t):
    """Check the matroid rank axioms and (P), (A1), (A2) on every subset and molecule."""
    if t.size > cap("axioms"):
        raise TooLarge(f"{t.size} elements exceed the axiom cap {cap('axioms')}")
    members = MultiplicityTable.members
    size = t.size
    full = (1 << size) - 1
    a1 = []
    for a in range(1 << size):
        for e in range(size):
            if a >> e & 1:
                continue
            ae = a | 1 << e
            if t.rank[ae] == t.rank[a]:
                ok = t.m[a] % t.m[ae] == 0
            else:
                ok = t.m[ae] % t.m[a] == 0
            a1.append(A1Check(members(a), e, ok))
    mols, a2 = [], []
    for r in range(1 << size):
        rr = t.rank[r]
        for extra in _submasks(full & ~r):
            s = r | extra
            f = 0
            for e in members(extra):
                if t.rank[r | 1 << e] == rr + 1:
                    f |= 1 << e
            tt = extra & ~f
            if any(t.rank[r | x] != rr + bin(x & f).count("1") for x in _submasks(extra)):
                continue
            rho = sum((-1) ** bin(s & ~(r | x)).count("1") * t.m[r | x] for x in _submasks(extra))
            rho *= (-1) ** bin(tt).count("1")
            mols.append(MoleculeCheck(members(r), members(s), members(f), members(tt), rho, rho >= 0))
            lhs, rhs = t.m[r] * t.m[s], t.m[r | f] * t.m[r | tt]
            a2.append(A2Check(members(r), members(s), lhs, rhs, lhs == rhs))
    return AxiomReport(tuple(mols), tuple(a1), tuple(a2), _rank_axioms(t))


@dataclass(frozen=True)
class LabelledGraph:
    """Edges are ``(tail, head, label, kind)`` with kind "regular" or "dotted"."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        for tail, head, label, kind in self.edges:
            if tail not in vs or head not in vs:
                raise BadShape(f"edge ({tail},{head}) uses an unknown vertex")
            if tail == head:
                raise LoopEdge(f"loop at vertex {tail}")
            if label < 1:
                raise BadShape("edge labels must be positive")
            if kind not in ("regular", "dotted"):
                raise BadShape(f"edge kind {kind!r} is neither regular nor dotted")

    def with_labels(self, labels):
        return LabelledGraph(self.vertices, tuple((t, h, l, k) for (t, h, _, k), l in zip(self.edges, labels)))


def labelled_lift(g):
    """Labelled incidence matrix of all edges, dotted ones last, and the dotted indices Y."""
    pos = {v: i for i, v in enumerate(g.vertices)}
    regular = [e for e in g.edges if e[3] == "regular"]
    dotted = [e for e in g.edges if e[3] == "dotted"]
    if not regular:
        raise BadShape("the graph has no regular edges")
    cols = []
    for tail, head, label, _ in regular + dotted:
        col = [0] * len(g.vertices)
        col[pos[tail]] = -label
        col[pos[head]] = label
        cols.append(col)
    return Matrix([list(r) for r in zip(*cols)]), tuple(range(len(regular), len(cols)))


def labelled_to_list(g):
    """Labelled incidence vectors of the regular edges in Z^V / <dotted edge vectors>."""
    m, y = labelled_lift(g)
    return quotient(m.int_rows(), list(y))


def labelled_power(g, k):
    if k < 0:
        raise ValueError("k must be non-negative")
    return labelled_to_list(g.with_labels([e[2] ** k for e in g.edges]))
