"""Arrangement value types and the basic constructions on them.

Hyperplanes are ``{x : normal . x = offset}`` over Q.  Every construction
here is a pure function returning new immutable values.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from . import linalg
from .errors import (EmptyIntersection, InputError, PointOnLocalization,
                     SubspaceInsideHyperplane)

CENTRAL = "central"
AFFINE = "affine"


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        normal = linalg.vec(self.normal)
        offset = linalg.to_fraction(self.offset)
        lead = next((a for a in normal if a != 0), None)
        if lead is None:
            raise InputError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", tuple(a / lead for a in normal))
        object.__setattr__(self, "offset", offset / lead)

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def is_linear(self) -> bool:
        return self.offset == 0

    def value(self, point) -> Fraction:
        """The defining affine form ``normal . x - offset`` at ``point``."""
        return linalg.dot(self.normal, point) - self.offset

    def contains(self, point) -> bool:
        return self.value(point) == 0


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple = ()
    kind: str = CENTRAL

    def __post_init__(self):
        hs = tuple(h if isinstance(h, Hyperplane) else Hyperplane(*h) for h in self.hyperplanes)
        object.__setattr__(self, "hyperplanes", hs)
        if self.dim < 0:
            raise InputError("dimension must be nonnegative")
        if self.kind not in (CENTRAL, AFFINE):
            raise InputError(f"unknown arrangement kind {self.kind!r}")
        for h in hs:
            if h.dim != self.dim:
                raise InputError(f"hyperplane of dimension {h.dim} in ambient dimension {self.dim}")
            if self.kind == CENTRAL and not h.is_linear:
                raise InputError("central arrangement with a nonzero offset")
        if len(set(hs)) != len(hs):
            raise InputError("duplicate hyperplanes (arrangement must be simple)")

    @classmethod
    def central(cls, dim, normals):
        return cls(dim, tuple(Hyperplane(n) for n in normals), CENTRAL)

    @classmethod
    def affine(cls, dim, pairs):
        return cls(dim, tuple(Hyperplane(n, b) for n, b in pairs), AFFINE)

    @classmethod
    def simplified(cls, dim, hyperplanes, kind=CENTRAL):
        """Build an arrangement, dropping repeated hyperplanes (first kept)."""
        seen = {}
        for h in hyperplanes:
            seen.setdefault(h, None)
        return cls(dim, tuple(seen), kind)

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i):
        return self.hyperplanes[i]

    @property
    def is_central(self) -> bool:
        return self.kind == CENTRAL

    def normals(self, indices=None) -> list:
        idx = range(len(self)) if indices is None else indices
        return [self.hyperplanes[i].normal for i in idx]

    @property
    def rank(self) -> int:
        return linalg.rank(self.normals(), self.dim)

    def subarrangement(self, indices):
        return Arrangement(self.dim, tuple(self.hyperplanes[i] for i in indices), self.kind)

    def delete(self, index):
        return self.subarrangement([i for i in range(len(self)) if i != index])


@dataclass(frozen=True)
class Subspace:
    """``translate + span(basis)`` inside Q^ambient."""

    ambient: int
    basis: tuple = ()
    translate: tuple = field(default=None)

    def __post_init__(self):
        basis = tuple(linalg.vec(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        t = linalg.zero(self.ambient) if self.translate is None else linalg.vec(self.translate)
        object.__setattr__(self, "translate", t)
        if any(len(b) != self.ambient for b in basis) or len(t) != self.ambient:
            raise InputError("subspace vectors have the wrong length")
        if linalg.rank(basis, self.ambient) != len(basis):
            raise InputError("subspace basis vectors are dependent")

    @classmethod
    def whole(cls, n):
        return cls(n, tuple(linalg.unit(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.basis)

    @property
    def is_linear(self) -> bool:
        return linalg.is_zero(self.translate)

    def canonical_basis(self) -> tuple:
        return tuple(linalg.rref(self.basis, self.ambient)[0])

    def contains_point(self, p) -> bool:
        d = [a - b for a, b in zip(linalg.vec(p), self.translate)]
        return linalg.rank(list(self.basis) + [tuple(d)], self.ambient) == self.dim

    def inside(self, h: Hyperplane) -> bool:
        return h.contains(self.translate) and all(linalg.dot(h.normal, b) == 0 for b in self.basis)


def _check_indices(A, S):
    S = sorted(set(S))
    for i in S:
        if not 0 <= i < len(A):
            raise InputError(f"hyperplane index {i} out of range 0..{len(A) - 1}")
    return S


def rank_of_subset(A: Arrangement, S) -> int:
    """Codimension of the intersection of the hyperplanes indexed by ``S``."""
    S = _check_indices(A, S)
    if not A.is_central:
        raise InputError("rank_of_subset needs a central arrangement")
    return linalg.rank(A.normals(S), A.dim)


def intersect_subset(A: Arrangement, S) -> Subspace:
    S = _check_indices(A, S)
    rows = A.normals(S)
    sol = linalg.solve_affine(rows, [A[i].offset for i in S], A.dim)
    if sol is None:
        raise EmptyIntersection(f"hyperplanes {S} have empty intersection")
    particular, kernel = sol
    return Subspace(A.dim, tuple(kernel), particular)


def cone(A: Arrangement) -> Arrangement:
    """Homogenize with a new first coordinate x0; H_inf = {x0 = 0} goes last."""
    hs = [Hyperplane((-h.offset,) + h.normal) for h in A]
    hs.append(Hyperplane(linalg.unit(A.dim + 1, 0)))
    return Arrangement(A.dim + 1, tuple(hs), CENTRAL)


def decone(A: Arrangement, h_inf: int) -> Arrangement:
    """Dehomogenize at ``A[h_inf]``.

    Coordinates change by ``y0 = n_inf . x`` and ``y_i = x_i`` for the
    remaining coordinates (the lowest-index nonzero entry of ``n_inf`` is
    the one replaced); the result lives on ``y0 = 1``.
    """
    _check_indices(A, [h_inf])
    if not A.is_central:
        raise InputError("decone needs a central arrangement")
    d = A.dim
    n_inf = A[h_inf].normal
    piv = next(i for i, a in enumerate(n_inf) if a != 0)
    M = [n_inf] + [linalg.unit(d, i) for i in range(d) if i != piv]
    M_inv_T = linalg.transpose(linalg.inverse(M))
    out = []
    for k, h in enumerate(A):
        if k == h_inf:
            continue
        m = linalg.matvec(M_inv_T, h.normal)
        normal = m[1:]
        if linalg.is_zero(normal):
            raise InputError("decone: hyperplane parallel to H_inf")
        out.append(Hyperplane(normal, -m[0]))
    return Arrangement.simplified(d - 1, out, AFFINE)


def restrict(A: Arrangement, S: Subspace) -> Arrangement:
    """Trace of ``A`` on ``S`` in the coordinates given by ``S.basis``.

    Empty traces (hyperplanes parallel to an affine ``S``) are dropped and
    coincident traces are merged.
    """
    if S.ambient != A.dim:
        raise InputError("subspace lives in the wrong ambient space")
    out = []
    for i, h in enumerate(A):
        coeffs = tuple(linalg.dot(h.normal, b) for b in S.basis)
        rhs = h.offset - linalg.dot(h.normal, S.translate)
        if linalg.is_zero(coeffs):
            if rhs == 0:
                raise SubspaceInsideHyperplane(f"subspace lies inside hyperplane {i}")
            continue
        out.append(Hyperplane(coeffs, rhs))
    kind = CENTRAL if A.is_central and S.is_linear else AFFINE
    return Arrangement.simplified(S.dim, out, kind)


# -- localization and fibers --------------------------------------------------

@dataclass(frozen=True)
class QuotientFrame:
    """Coordinates adapted to a linear subspace X.

    ``fiber_basis`` is the reduced echelon basis of X; ``quotient_coords``
    are the standard coordinates outside its pivot set, which span a fixed
    complement of X and therefore coordinatize Q^n / X.
    """

    ambient: int
    fiber_basis: tuple
    quotient_coords: tuple

    @classmethod
    def of(cls, X: Subspace):
        if not X.is_linear:
            raise InputError("quotient frame needs a linear subspace")
        basis, pivots = linalg.rref(X.basis, X.ambient)
        free = tuple(i for i in range(X.ambient) if i not in pivots)
        return cls(X.ambient, tuple(basis), free)

    def lift(self, v) -> tuple:
        """Embed quotient coordinates as a point of the chosen complement."""
        v = linalg.vec(v)
        if len(v) != len(self.quotient_coords):
            raise InputError(f"quotient point needs {len(self.quotient_coords)} coordinates")
        p = [Fraction(0)] * self.ambient
        for c, x in zip(self.quotient_coords, v):
            p[c] = x
        return tuple(p)

    def project_form(self, normal) -> tuple:
        """A form vanishing on X, read on the complement."""
        return tuple(normal[c] for c in self.quotient_coords)

    def project_point(self, u) -> tuple:
        """Quotient coordinates of the class ``u + X``."""
        u = list(linalg.vec(u))
        for b in self.fiber_basis:
            piv = next(i for i, x in enumerate(b) if x != 0)
            c = u[piv]
            if c:
                u = [x - c * y for x, y in zip(u, b)]
        return tuple(u[c] for c in self.quotient_coords)


def localization_indices(A: Arrangement, X: Subspace) -> list:
    return [i for i, h in enumerate(A) if X.inside(h)]


def localization(A: Arrangement, X: Subspace) -> Arrangement:
    """``A_X`` as a central arrangement in quotient coordinates on Q^n / X."""
    frame = QuotientFrame.of(X)
    hs = [Hyperplane(frame.project_form(A[i].normal)) for i in localization_indices(A, X)]
    return Arrangement(len(frame.quotient_coords), tuple(hs), CENTRAL)


def _check_flat(A: Arrangement, X: Subspace):
    idx = localization_indices(A, X)
    if linalg.rank(A.normals(idx), A.dim) != X.codim:
        raise InputError("subspace is not an element of the intersection lattice")
    return idx


def fiber_arrangement(A: Arrangement, X: Subspace, v) -> Arrangement:
    """Restriction of ``A`` to the translate ``v + X``.

    ``v`` is either given in quotient coordinates (length ``codim X``) or as
    a full point of the ambient space.  Fiber coordinates are the echelon
    basis of ``X``.
    """
    if not A.is_central:
        raise InputError("fiber_arrangement needs a central arrangement")
    loc = _check_flat(A, X)
    frame = QuotientFrame.of(X)
    v = linalg.vec(v)
    point = v if len(v) == A.dim and len(v) != len(frame.quotient_coords) else frame.lift(v)
    for i in loc:
        if A[i].contains(point):
            raise PointOnLocalization(f"base point lies on hyperplane {i} of the localization")
    S = Subspace(A.dim, frame.fiber_basis, point)
    rest = A.subarrangement([i for i in range(len(A)) if i not in set(loc)])
    return restrict(rest, S)


def _primes():
    found = []
    for n in count(2):
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n


def generic_points(A: Arrangement):
    """Infinite deterministic stream of points off every hyperplane of ``A``.

    Candidates are moment-curve points ``(1, t, ..., t^(n-1))`` for prime t.
    """
    n = A.dim
    for t in _primes():
        p = tuple(Fraction(t) ** k for k in range(n))
        if all(h.value(p) != 0 for h in A):
            yield p


def generic_point(A: Arrangement, index: int = 0) -> tuple:
    for k, p in enumerate(generic_points(A)):
        if k == index:
            return p
