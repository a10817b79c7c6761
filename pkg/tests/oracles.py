"""Independent reference implementations used only by the tests.

Nothing here calls the library's linear algebra or lattice code.
"""

from fractions import Fraction
from itertools import combinations
from math import lcm


def bareiss_rank(rows) -> int:
    """Rank by fraction-free Bareiss elimination after clearing denominators."""
    m = []
    for r in rows:
        r = [Fraction(x) for x in r]
        d = lcm(*(x.denominator for x in r)) if r else 1
        m.append([int(x * d) for x in r])
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == nrows:
            break
    return rank


def powerset_lattice(normals) -> dict:
    """Closed set -> rank, by closing all 2^m subsets of hyperplanes.

    H_i contains the intersection of S iff adding its normal does not raise
    the rank of S.
    """
    m = len(normals)
    out = {}
    for k in range(m + 1):
        for S in combinations(range(m), k):
            r = bareiss_rank([normals[i] for i in S])
            closed = frozenset(i for i in range(m)
                               if bareiss_rank([normals[j] for j in S] + [normals[i]]) == r)
            out[closed] = r
    return out


# -- polynomials as coefficient lists (low degree first) -------------------

def _sub(p, q):
    n = max(len(p), len(q))
    p = p + [0] * (n - len(p))
    q = q + [0] * (n - len(q))
    r = [a - b for a, b in zip(p, q)]
    while r and r[-1] == 0:
        r.pop()
    return r


def _normalize(v):
    v = [Fraction(x) for x in v]
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def _restrict_to(normals, k):
    """Forms of the other hyperplanes on H_k, in coordinates dropping a pivot."""
    n = normals[k]
    p = next(i for i, x in enumerate(n) if x != 0)
    out = set()
    for j, m in enumerate(normals):
        if j == k:
            continue
        r = [m[i] - m[p] * n[i] / n[p] for i in range(len(n)) if i != p]
        if any(x != 0 for x in r):
            out.add(_normalize(r))
    return sorted(out)


def deletion_contraction(normals, dim) -> list:
    """Arrangement characteristic polynomial t^(dim - rank) chi(t) by
    chi(A) = chi(A - H) - chi(A^H)."""
    normals = sorted({_normalize(v) for v in normals})
    memo = {}

    def chi(forms, d):
        key = (tuple(forms), d)
        if key in memo:
            return memo[key]
        if not forms:
            res = [0] * d + [1]
        else:
            rest = forms[1:]
            res = _sub(chi(rest, d), chi(_restrict_to(forms, 0), d - 1))
        memo[key] = res
        return res

    return chi(normals, dim)
