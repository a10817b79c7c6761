"""Generalized parallel connection of two geometric lattices along a common
flat, and its coordinate realization.

Ground-set convention for the connection: the elements of ``E1 - F`` come
first (in their original order), followed by all of ``E2``.  An element of F
on the first side is identified with its partner on the second side, so the
realized arrangement lists ``A1 - (A1)_X1`` and then ``A2`` in exactly this
order.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .arrangement import Arrangement, Hyperplane, intersect_subset
from .errors import FlatNotModular, IdentificationInvalid, RealizationMismatch
from .lattice import Flat, FlatLattice, build_lattice
from .modularity import is_modular


@dataclass(frozen=True)
class FlatIdentification:
    """Bijection between the F-elements of the two sides.

    ``map`` sends an index of the first side's F to its partner on the
    second side.  ``scalars`` optionally fixes the form change: the linear
    map on the span of the first side's F-forms sending form ``e`` to
    ``scalars[e]`` times the partner form.  Since the F-forms span that
    space the scalars determine the map.
    """

    map: dict
    scalars: dict = field(default=None)

    @property
    def first(self) -> frozenset:
        return frozenset(self.map)

    @property
    def second(self) -> frozenset:
        return frozenset(self.map.values())


class ConnectionLattice(FlatLattice):
    """Lattice of a generalized parallel connection with the two embeddings."""

    def __init__(self, L1, L2, ident, flats, embed1, embed2):
        super().__init__(len(embed1) - len(ident.map) + L2.ground, flats)
        self.first, self.second = L1, L2
        self.identification = ident
        self.embed1 = embed1
        self.embed2 = embed2

    @property
    def e1(self) -> frozenset:
        return frozenset(self.embed1.values())

    @property
    def e2(self) -> frozenset:
        return frozenset(self.embed2.values())

    def trace(self, flat: Flat, side: int) -> frozenset:
        """Pull a flat back to the ground set of one side."""
        embed = self.embed1 if side == 1 else self.embed2
        return frozenset(e for e, k in embed.items() if k in flat.atoms)


def _embeddings(n1: int, n2: int, ident: FlatIdentification):
    outside = [e for e in range(n1) if e not in ident.map]
    shift = len(outside)
    embed1 = {e: k for k, e in enumerate(outside)}
    for e, f in ident.map.items():
        embed1[e] = shift + f
    embed2 = {f: shift + f for f in range(n2)}
    return embed1, embed2


def check_identification(L1: FlatLattice, L2: FlatLattice, ident: FlatIdentification):
    """Both sides of F must be flats with isomorphic lower intervals."""
    m = ident.map
    if len(set(m.values())) != len(m):
        raise IdentificationInvalid("identification is not injective")
    if not all(0 <= e < L1.ground for e in m) or not all(0 <= f < L2.ground for f in m.values()):
        raise IdentificationInvalid("identification index out of range")
    if ident.first not in L1 or ident.second not in L2:
        raise IdentificationInvalid("identified sets must be flats on both sides")
    F1, F2 = L1.flat(ident.first), L2.flat(ident.second)
    below1, below2 = L1.below(F1), L2.below(F2)
    if len(below1) != len(below2):
        raise IdentificationInvalid("the two copies of F have different lattices")
    for z in below1:
        img = frozenset(m[e] for e in z.atoms)
        if img not in L2 or L2.flat(img).rank != z.rank:
            raise IdentificationInvalid(
                f"flat {z.sorted_atoms()} of F has no rank-{z.rank} partner")
    return F1, F2


def gpc_lattice(L1: FlatLattice, L2: FlatLattice, ident: FlatIdentification) -> ConnectionLattice:
    """Flats are the sets whose traces on both sides are flats, with
    ``r(Y) = r1(Y & E1) + r2(Y & E2) - r1(Y & F)``."""
    F1, _ = check_identification(L1, L2, ident)
    report = is_modular(L1, F1)
    if not report:
        raise FlatNotModular(f"flat {F1.sorted_atoms()} is not modular in the first lattice"
                             f" (witness {report.witness.sorted_atoms()})")
    embed1, embed2 = _embeddings(L1.ground, L2.ground, ident)
    flats = []
    by_trace = {}
    for y2 in L2.flats:
        by_trace.setdefault(y2.atoms & ident.second, []).append(y2)
    for y1 in L1.flats:
        meet = y1.atoms & F1.atoms
        partner = frozenset(ident.map[e] for e in meet)
        r_meet = L1.flat(meet).rank
        for y2 in by_trace.get(partner, ()):
            atoms = frozenset(embed1[e] for e in y1.atoms) | frozenset(embed2[f] for f in y2.atoms)
            flats.append((atoms, y1.rank + y2.rank - r_meet))
    P = ConnectionLattice(L1, L2, ident, flats, embed1, embed2)
    P.check_geometric()
    return P


def verify_gpc_modularity(P: ConnectionLattice, flat=None) -> bool:
    """Whether the second side (or ``flat``) is a modular flat of ``P``."""
    atoms = P.e2 if flat is None else frozenset(flat.atoms if isinstance(flat, Flat) else flat)
    return is_modular(P, P.flat(atoms)).is_modular


# -- realization ----------------------------------------------------------

def _independent_subset(forms, indices) -> list:
    chosen, rows = [], []
    for i in indices:
        if linalg.rank(rows + [forms[i]]) > len(rows):
            chosen.append(i)
            rows.append(forms[i])
    return chosen


def derive_scalars(A1: Arrangement, A2: Arrangement, mapping: dict) -> dict:
    """Scalars ``s_e`` such that ``n_e -> s_e m_{map(e)}`` extends linearly.

    Fails when no such scalars exist or when they are not unique up to a
    common factor (a decomposable F leaves one free factor per component).
    """
    F = sorted(mapping)
    if not F:
        return {}
    basis = _independent_subset([h.normal for h in A1], F)
    unknown = {e: k for k, e in enumerate(F)}
    rows = []
    for e in F:
        if e in basis:
            continue
        sol = linalg.solve_affine(linalg.transpose([A1[b].normal for b in basis]),
                                  A1[e].normal, len(basis))
        coeffs, _ = sol
        # sum_b c_b s_b m_b - s_e m_e = 0, one equation per coordinate
        for j in range(A2.dim):
            row = [Fraction(0)] * len(F)
            for b, c in zip(basis, coeffs):
                row[unknown[b]] += c * A2[mapping[b]].normal[j]
            row[unknown[e]] -= A2[mapping[e]].normal[j]
            rows.append(row)
    # the partner forms of the basis must be independent for the map to be invertible
    if linalg.rank([A2[mapping[b]].normal for b in basis], A2.dim) != len(basis):
        raise IdentificationInvalid("partner forms of an F-basis are dependent")
    kernel = linalg.nullspace(rows, len(F)) if rows else [linalg.unit(len(F), k) for k in range(len(F))]
    if not kernel:
        raise IdentificationInvalid("no linear form change matches the identified hyperplanes")
    if len(kernel) > 1:
        raise IdentificationInvalid(
            f"form change is not unique up to scalar ({len(kernel)} free factors); pass scalars")
    s = kernel[0]
    if any(x == 0 for x in s):
        raise IdentificationInvalid("form change sends an F-form to zero")
    return {e: s[unknown[e]] for e in F}


def _check_scalars(A1, A2, mapping, scalars):
    F = sorted(mapping)
    basis = _independent_subset([h.normal for h in A1], F)
    for e in F:
        if scalars.get(e, 0) == 0:
            raise IdentificationInvalid(f"missing or zero scalar for {e}")
        if e in basis:
            continue
        coeffs, _ = linalg.solve_affine(linalg.transpose([A1[b].normal for b in basis]),
                                        A1[e].normal, len(basis))
        image = [Fraction(0)] * A2.dim
        for b, c in zip(basis, coeffs):
            image = linalg.add(image, linalg.scale(c * scalars[b], A2[mapping[b]].normal))
        if tuple(image) != linalg.scale(scalars[e], A2[mapping[e]].normal):
            raise IdentificationInvalid(f"scalars are inconsistent at {e}")
    return basis


def _coordinates(forms_basis, dim):
    """Coefficients of any covector in ``forms_basis`` plus unit completions."""
    full = linalg.complete_basis(forms_basis, dim)
    solve_matrix = linalg.transpose(full)

    def coords(normal):
        sol = linalg.solve_affine(solve_matrix, normal, dim)
        return sol[0][:len(forms_basis)], sol[0][len(forms_basis):]

    return coords


@dataclass
class Realization:
    arrangement: Arrangement
    lattice: ConnectionLattice
    identification: FlatIdentification
    matches: bool


def _flat_indices(A: Arrangement, X) -> frozenset:
    S = intersect_subset(A, sorted(X))
    return frozenset(i for i, h in enumerate(A) if S.inside(h))


def realize_gpc(A1: Arrangement, A2: Arrangement, X1, X2, ident: FlatIdentification = None,
                check: bool = True) -> Realization:
    """Arrangement in ``Q^(r-p) x Q^p x Q^(s-p)`` realizing the connection.

    ``X1``, ``X2`` are hyperplane-index sets generating the common flat on
    each side.  Without ``ident`` the partners are matched in increasing
    index order.
    """
    F1, F2 = _flat_indices(A1, X1), _flat_indices(A2, X2)
    if ident is None:
        if len(F1) != len(F2):
            raise IdentificationInvalid("the two flats have different numbers of hyperplanes")
        ident = FlatIdentification(dict(zip(sorted(F1), sorted(F2))))
    if ident.first != F1 or ident.second != F2:
        raise IdentificationInvalid("identification does not cover the given flats")
    L1, L2 = build_lattice(A1), build_lattice(A2)
    P = gpc_lattice(L1, L2, ident)
    scalars = ident.scalars or derive_scalars(A1, A2, ident.map)
    basis = _check_scalars(A1, A2, ident.map, scalars)
    ident = FlatIdentification(dict(ident.map), dict(scalars))
    p = len(basis)
    d1, d2 = A1.dim, A2.dim
    f = [A1[b].normal for b in basis]
    g = [linalg.scale(scalars[b], A2[ident.map[b]].normal) for b in basis]
    coords1 = _coordinates(f, d1)
    coords2 = _coordinates(g, d2)
    zeros1, zeros2 = (Fraction(0),) * (d1 - p), (Fraction(0),) * (d2 - p)
    out = []
    for e, h in enumerate(A1):
        if e in ident.map:
            continue
        beta, a = coords1(h.normal)
        out.append(Hyperplane(tuple(a) + tuple(beta) + zeros2))
    for h in A2:
        gamma, delta = coords2(h.normal)
        out.append(Hyperplane(zeros1 + tuple(gamma) + tuple(delta)))
    A = Arrangement(d1 + d2 - p, tuple(out))
    matches = True
    if check:
        L = build_lattice(A)
        mine = {fl.atoms: fl.rank for fl in L.flats}
        theirs = {fl.atoms: fl.rank for fl in P.flats}
        matches = mine == theirs
        if not matches:
            raise RealizationMismatch("realized lattice differs from the connection lattice")
    return Realization(A, P, ident, matches)

