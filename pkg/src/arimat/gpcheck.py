"""GP_r conditions on multiplicity tables and GP_2 certificates for powers.

On every minor of rank r on 2r elements, a representable table admits signs
making the products ``m(S+t+J) * m(T-t+J)`` sum to zero.  Failing instances
are certificates of non-representability, checkable by one signed sum.
"""

from dataclasses import dataclass
from itertools import combinations, product

from ._config import cap
from .errors import ArimatError, TooLarge
from .arithmetic import MultiplicityTable, multiplicity, underlying_view
from .matroid import find_u24


@dataclass(frozen=True)
class GPrWitness:
    r: int
    I: tuple
    J: tuple
    S: tuple
    T: tuple
    calT: tuple
    products: tuple
    satisfiable: bool
    sigma: tuple = None


@dataclass(frozen=True)
class GPrReport:
    r: int
    passed: bool
    failures: tuple
    instances: int


def sign_solution(values):
    """Signs (first one +) with sum(sigma_i v_i) = 0, or ``None``.

    The empty list is solved by the empty sign vector.
    """
    if not values:
        return ()
    for tail in product((1, -1), repeat=len(values) - 1):
        sigma = (1,) + tail
        if sum(s * v for s, v in zip(sigma, values)) == 0:
            return sigma
    return None


def _witness(t, r, I, J, S):
    mask = MultiplicityTable.mask
    T = tuple(e for e in I if e not in S)
    rj = t.rank[mask(J)]
    cal, prods = [], []
    for x in T:
        left = S + (x,)
        right = tuple(e for e in T if e != x)
        if t.rank[mask(left + J)] - rj == r and t.rank[mask(right + J)] - rj == r:
            cal.append(x)
            prods.append(t.m[mask(left + J)] * t.m[mask(right + J)])
    sigma = sign_solution(prods)
    return GPrWitness(r, I, J, S, T, tuple(cal), tuple(prods), sigma is not None, sigma)


def gp_r_check(t, r):
    """Check (GP_r) on every minor of rank r on 2r elements.

    Enumeration is J by size then lexicographically, then I, then S; failures
    come out in that order.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if r > 4:
        raise TooLarge("r beyond 4 is not supported")
    if t.size > cap("gp_r"):
        raise TooLarge(f"{t.size} elements exceed the GP_r cap {cap('gp_r')}")
    ground = range(t.size)
    mask = MultiplicityTable.mask
    failures = []
    count = 0
    for size in range(t.size - 2 * r + 1):
        for J in combinations(ground, size):
            rj = t.rank[mask(J)]
            rest = [e for e in ground if e not in J]
            for I in combinations(rest, 2 * r):
                if t.rank[mask(I + J)] - rj != r:
                    continue
                for S in combinations(I, r - 1):
                    count += 1
                    w = _witness(t, r, I, J, S)
                    if not w.satisfiable:
                        failures.append(w)
    return GPrReport(r, not failures, tuple(failures), count)


def power_nonrep_certificate(gl, k):
    """A failing GP_2 instance of the k-th power of ``gl``'s arithmetic matroid.

    Uses the first U(2,4) minor of the underlying matroid with S its smallest
    element.  Returns ``None`` for k = 1 or when there is no such minor.
    """
    if k == 1:
        return None
    w = find_u24(underlying_view(gl))
    if w is None:
        return None
    I, J = w.inner, w.context
    S = (I[0],)
    T = I[1:]
    prods = []
    for x in T:
        left = S + (x,) + J
        right = tuple(e for e in T if e != x) + J
        prods.append((multiplicity(gl, left) * multiplicity(gl, right)) ** k)
    if sign_solution(prods) is not None:
        raise ArimatError("powered U(2,4) products unexpectedly satisfy GP_2")
    return GPrWitness(2, I, J, S, T, T, tuple(prods), False, None)
