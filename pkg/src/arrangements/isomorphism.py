"""Isomorphism of geometric lattices by backtracking over atom bijections."""

from dataclasses import dataclass

from .lattice import FlatLattice


@dataclass(frozen=True)
class LatticeIsomorphism:
    atom_bijection: dict

    def image(self, atoms) -> frozenset:
        return frozenset(self.atom_bijection[a] for a in atoms)


def _as_simple(L: FlatLattice) -> FlatLattice:
    if L.bottom.atoms or any(len(a.atoms) != 1 for a in L.atoms) or len(L.atoms) != L.ground:
        return L.simple()
    return L


def _lines(L: FlatLattice):
    n = L.ground
    table = [[None] * n for _ in range(n)]
    for f in L.level(2):
        for a in f.atoms:
            for b in f.atoms:
                table[a][b] = f.atoms
    return table


def verify_isomorphism(L1: FlatLattice, L2: FlatLattice, phi: dict) -> bool:
    if len(L1) != len(L2):
        return False
    for f in L1.flats:
        img = frozenset(phi[a] for a in f.atoms)
        if img not in L2 or L2.flat(img).rank != f.rank:
            return False
    return True


def lattice_isomorphic(L1: FlatLattice, L2: FlatLattice):
    """A verified atom bijection inducing ``L1 ~= L2``, or ``None``.

    Non-simple inputs are replaced by their simplifications, so the
    bijection is between atom indices of the simplified lattices.
    """
    L1, L2 = _as_simple(L1), _as_simple(L2)
    if L1.ground != L2.ground or L1.rank != L2.rank or L1.shape() != L2.shape():
        return None
    n = L1.ground
    prof1 = [L1.rank_profile(a) for a in range(n)]
    prof2 = [L2.rank_profile(b) for b in range(n)]
    if sorted(prof1) != sorted(prof2):
        return None
    cands = [[b for b in range(n) if prof2[b] == prof1[a]] for a in range(n)]
    order = sorted(range(n), key=lambda a: (len(cands[a]), a))
    line1, line2 = _lines(L1), _lines(L2)
    phi = {}
    used = set()

    def consistent(a, b):
        for a2, b2 in phi.items():
            l1, l2 = line1[a][a2], line2[b][b2]
            if len(l1) != len(l2):
                return False
            for a3, b3 in phi.items():
                if (a3 in l1) != (b3 in l2):
                    return False
        return True

    def search(k):
        if k == n:
            return verify_isomorphism(L1, L2, phi)
        a = order[k]
        for b in cands[a]:
            if b in used or not consistent(a, b):
                continue
            phi[a] = b
            used.add(b)
            if search(k + 1):
                return True
            del phi[a]
            used.discard(b)
        return False

    if search(0):
        return LatticeIsomorphism(dict(sorted(phi.items())))
    return None


def invariant_key(L: FlatLattice) -> tuple:
    """Cheap isomorphism invariant used for hashing lattices."""
    L = _as_simple(L)
    return (L.ground, L.rank, L.shape(), tuple(sorted(L.rank_profile(a) for a in range(L.ground))))
