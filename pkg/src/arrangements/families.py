"""Standard arrangements used as fixtures and CLI shortcuts."""

from itertools import combinations

from .arrangement import Arrangement


def _form(n, coeffs):
    v = [0] * n
    for i, c in coeffs:
        v[i] += c
    return tuple(v)


def boolean(n: int) -> Arrangement:
    return Arrangement.central(n, [_form(n, [(i, 1)]) for i in range(n)])


def braid(n: int) -> Arrangement:
    """``x_i = x_j`` for ``i < j`` in Q^n (the arrangement A_{n-1})."""
    return Arrangement.central(n, [_form(n, [(i, 1), (j, -1)]) for i, j in combinations(range(n), 2)])


def type_b(n: int) -> Arrangement:
    forms = [_form(n, [(i, 1), (j, -1)]) for i, j in combinations(range(n), 2)]
    forms += [_form(n, [(i, 1), (j, 1)]) for i, j in combinations(range(n), 2)]
    forms += [_form(n, [(i, 1)]) for i in range(n)]
    return Arrangement.central(n, forms)


def generic(rank: int, size: int) -> Arrangement:
    """Uniform matroid U_{rank,size}: coordinate hyperplanes, then rows of a
    Vandermonde matrix at 1, 2, 3, ... (every ``rank`` of them independent)."""
    forms = [_form(rank, [(i, 1)]) for i in range(min(rank, size))]
    t = 1
    while len(forms) < size:
        forms.append(tuple(t ** k for k in range(rank)))
        t += 1
    A = Arrangement.central(rank, forms)
    return A


def pencil(k: int) -> Arrangement:
    """``k`` distinct lines through the origin of Q^2."""
    forms = [(1, 0)] + [(i, 1) for i in range(k - 1)]
    return Arrangement.central(2, forms[:k])
