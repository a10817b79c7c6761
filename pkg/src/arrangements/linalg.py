"""Exact linear algebra over the rationals.

Vectors are tuples of ``Fraction``; matrices are sequences of row vectors.
The integer helpers at the bottom are the fast path used when building
lattices, where every vector can be scaled to a primitive integer vector.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

Vector = tuple


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(x)


def vec(xs) -> tuple:
    return tuple(to_fraction(x) for x in xs)


def zero(n: int) -> tuple:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> tuple:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u) -> tuple:
    return tuple(c * a for a in u)


def is_zero(u) -> bool:
    return all(a == 0 for a in u)


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.  Pivots
    are chosen by lowest column index, so the output is deterministic.
    """
    m = [list(map(to_fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows, ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_affine(rows, rhs, ncols: int):
    """Solve ``rows @ x = rhs``.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    """
    aug = [tuple(r) + (to_fraction(b),) for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x), nullspace(rows, ncols)


def inverse(matrix):
    n = len(matrix)
    aug = [tuple(matrix[i]) + unit(n, i) for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [tuple(row[n:]) for row in red]


def transpose(matrix):
    return [tuple(col) for col in zip(*matrix)]


def matvec(matrix, v) -> tuple:
    return tuple(dot(row, v) for row in matrix)


def complete_basis(rows, n: int) -> list:
    """Extend independent ``rows`` to a basis of Q^n with standard vectors.

    Standard vectors are tried in increasing index order.
    """
    basis = [tuple(r) for r in rows]
    r = rank(basis, n)
    for i in range(n):
        if r == n:
            break
        cand = basis + [unit(n, i)]
        if rank(cand, n) > r:
            basis = cand
            r += 1
    return basis


# -- integer fast path -------------------------------------------------------

def primitive(v) -> tuple:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    fr = [to_fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _reduce_int(v):
    g = reduce(gcd, v, 0)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def kernel_cut(basis, normal):
    """Basis of ``{x in span(basis) : normal . x = 0}`` over the integers.

    ``basis`` is a list of independent integer vectors; the result is again
    independent and has one fewer vector unless ``normal`` already vanishes.
    """
    cs = [idot(normal, b) for b in basis]
    piv = next((i for i, c in enumerate(cs) if c != 0), None)
    if piv is None:
        return list(basis)
    cp, bp = cs[piv], basis[piv]
    out = []
    for i, (c, b) in enumerate(zip(cs, basis)):
        if i == piv:
            continue
        if c == 0:
            out.append(b)
        else:
            out.append(_reduce_int(tuple(cp * x - c * y for x, y in zip(b, bp))))
    return out


def int_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                a, b = m[r][c], m[i][c]
                m[i] = list(_reduce_int([a * x - b * y for x, y in zip(m[i], m[r])]))
        r += 1
        if r == len(m):
            break
    return r
