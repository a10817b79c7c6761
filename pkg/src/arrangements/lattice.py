"""Geometric lattices of flats and the intersection lattice of an arrangement.

``FlatLattice`` is the abstract structure: a family of closed subsets of a
ground set together with their ranks.  It is used directly for matroid
constructions that have no coordinates (truncations, parallel
connections).  ``IntersectionLattice`` adds the subspace of each flat.

Order relations are precomputed as Python-int bitsets over the flat list,
which is sorted by ``(rank, sorted atoms)``.  Since the list is sorted by
rank, the join of two flats is the lowest set bit of the intersection of
their up-sets, and the meet is the highest bit of the down-sets.
"""

from dataclasses import dataclass, field
from functools import cached_property
from operator import mul

from . import linalg
from .arrangement import Arrangement, Subspace
from .errors import InputError, NegativeCoefficient, NotGeometric
from .polynomial import IntegerPolynomial


@dataclass(frozen=True)
class Flat:
    atoms: frozenset
    rank: int
    subspace: Subspace = field(default=None, compare=False, hash=False, repr=False)

    @property
    def key(self):
        return (self.rank, tuple(sorted(self.atoms)))

    def __lt__(self, other):
        return self.key < other.key

    def __len__(self):
        return len(self.atoms)

    def sorted_atoms(self) -> list:
        return sorted(self.atoms)


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


class FlatLattice:
    """Lattice of flats over the ground set ``range(ground)``."""

    def __init__(self, ground: int, flats):
        self.ground = ground
        items = []
        for f in flats:
            if not isinstance(f, Flat):
                atoms, r = f
                f = Flat(frozenset(atoms), r)
            items.append(f)
        items.sort(key=lambda f: f.key)
        self.flats = items
        self._index = {f.atoms: i for i, f in enumerate(items)}
        if len(self._index) != len(items):
            raise NotGeometric("repeated flat")

    # -- basic access ---------------------------------------------------

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def __contains__(self, atoms):
        return frozenset(atoms) in self._index

    def index(self, f) -> int:
        atoms = f.atoms if isinstance(f, Flat) else frozenset(f)
        try:
            return self._index[atoms]
        except KeyError:
            raise InputError(f"{sorted(atoms)} is not a flat") from None

    def flat(self, atoms) -> Flat:
        return self.flats[self.index(atoms)]

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    @property
    def top(self) -> Flat:
        return self.flats[-1]

    @property
    def rank(self) -> int:
        return self.top.rank

    def corank(self, f: Flat) -> int:
        return self.rank - f.rank

    def level(self, k: int) -> list:
        return [f for f in self.flats if f.rank == k]

    @property
    def atoms(self) -> list:
        return self.level(1)

    # -- order ----------------------------------------------------------

    @cached_property
    def _up(self):
        fl = self.flats
        up = [0] * len(fl)
        for i, f in enumerate(fl):
            bits = 0
            for j in range(i, len(fl)):
                if f.atoms <= fl[j].atoms:
                    bits |= 1 << j
            up[i] = bits
        return up

    @cached_property
    def _down(self):
        n = len(self.flats)
        down = [0] * n
        for i, bits in enumerate(self._up):
            b = bits
            while b:
                j = _lowest_bit(b)
                down[j] |= 1 << i
                b &= b - 1
        return down

    @cached_property
    def _element_flat(self):
        """Index of the smallest flat containing each ground element."""
        out = {}
        for i, f in enumerate(self.flats):
            for e in f.atoms:
                out.setdefault(e, i)
        return out

    def leq(self, x: Flat, y: Flat) -> bool:
        return x.atoms <= y.atoms

    def join(self, x: Flat, y: Flat) -> Flat:
        bits = self._up[self.index(x)] & self._up[self.index(y)]
        return self.flats[_lowest_bit(bits)]

    def meet(self, x: Flat, y: Flat) -> Flat:
        bits = self._down[self.index(x)] & self._down[self.index(y)]
        return self.flats[bits.bit_length() - 1]

    def closure(self, elements) -> Flat:
        bits = self._up[0]
        for e in elements:
            try:
                bits &= self._up[self._element_flat[e]]
            except KeyError:
                raise InputError(f"element {e} is not in the ground set") from None
        return self.flats[_lowest_bit(bits)]

    def below(self, x: Flat) -> list:
        """Flats ``Z <= x``."""
        return [f for f in self.flats if f.atoms <= x.atoms]

    def above(self, x: Flat) -> list:
        return [f for f in self.flats if x.atoms <= f.atoms]

    def atoms_below(self, x: Flat) -> list:
        return [a for a in self.atoms if a.atoms <= x.atoms]

    def interval(self, lo: Flat, hi: Flat) -> list:
        return [f for f in self.flats if lo.atoms <= f.atoms <= hi.atoms]

    # -- invariants -----------------------------------------------------

    @cached_property
    def _mobius(self):
        down = self._down
        mu = [0] * len(self.flats)
        for i in range(len(self.flats)):
            if i == 0:
                mu[0] = 1
                continue
            s = 0
            b = down[i] & ~(1 << i)
            while b:
                j = _lowest_bit(b)
                s += mu[j]
                b &= b - 1
            mu[i] = -s
        return mu

    def mobius(self) -> dict:
        """``mu(bottom, Y)`` for every flat ``Y``."""
        return {f: m for f, m in zip(self.flats, self._mobius)}

    def mobius_of(self, f: Flat) -> int:
        return self._mobius[self.index(f)]

    def characteristic_polynomial(self) -> IntegerPolynomial:
        r = self.rank
        coeffs = [0] * (r + 1)
        for f, m in zip(self.flats, self._mobius):
            coeffs[r - f.rank] += m
        return IntegerPolynomial(tuple(coeffs))

    def poincare_polynomial(self) -> IntegerPolynomial:
        """``(-t)^r chi(-1/t)``, the Betti numbers of the complement."""
        chi = self.characteristic_polynomial().coefficients
        r = self.rank
        coeffs = [0] * (r + 1)
        for k, c in enumerate(chi):
            coeffs[r - k] = c * (-1) ** (r + k)
        if any(c < 0 for c in coeffs):
            raise NegativeCoefficient(f"Poincare polynomial {coeffs} has a negative coefficient")
        return IntegerPolynomial(tuple(coeffs))

    def rank_profile(self, element) -> tuple:
        """Sorted multiset of ``(rank, size)`` over flats containing ``element``."""
        return tuple(sorted((f.rank, len(f.atoms)) for f in self.flats if element in f.atoms))

    def shape(self) -> tuple:
        return tuple(sorted((f.rank, len(f.atoms)) for f in self.flats))

    def check_geometric(self):
        """Raise ``NotGeometric`` unless this is a geometric lattice whose
        stored ranks are the lattice heights."""
        fl = self.flats
        if fl[0].rank != 0 or any(f.rank == 0 for f in fl[1:]):
            raise NotGeometric("rank-0 flat is not unique")
        if not all(fl[0].atoms <= f.atoms for f in fl):
            raise NotGeometric("no bottom element")
        if fl[-1].atoms != frozenset(range(self.ground)):
            raise NotGeometric("the full ground set is not the top flat")
        for i, f in enumerate(fl):
            for j in range(i + 1, len(fl)):
                g = fl[j]
                common = f.atoms & g.atoms
                if common not in self._index:
                    raise NotGeometric(f"intersection of {f.key} and {g.key} is not a flat")
        up, down = self._up, self._down
        for i, f in enumerate(fl):
            b = up[i] & ~(1 << i)
            while b:
                j = _lowest_bit(b)
                b &= b - 1
                d = fl[j].rank - f.rank
                if d <= 0:
                    raise NotGeometric("rank is not strictly monotone")
                if d >= 2 and bin(up[i] & down[j]).count("1") <= 2:
                    raise NotGeometric("rank jumps across a cover")
        loops = fl[0].atoms
        for e in range(self.ground):
            if e in loops:
                continue
            if not any(e in a.atoms for a in self.atoms):
                raise NotGeometric(f"element {e} lies in no atom")
        for i, f in enumerate(fl):
            for j in range(i + 1, len(fl)):
                g = fl[j]
                jn = fl[_lowest_bit(up[i] & up[j])]
                mt = fl[(down[i] & down[j]).bit_length() - 1]
                if jn.rank + mt.rank > f.rank + g.rank:
                    raise NotGeometric(f"semimodular law fails for {f.key}, {g.key}")

    # -- derived lattices ---------------------------------------------

    def simple(self):
        """The simple lattice: ground set = atoms, relabelled 0..k-1 in order."""
        atoms = self.atoms
        where = {}
        for k, a in enumerate(atoms):
            for e in a.atoms:
                where[e] = k
        flats = [(frozenset(where[e] for e in f.atoms if e in where), f.rank) for f in self.flats]
        return FlatLattice(len(atoms), flats)

    def lower_interval(self, x: Flat):
        """Lattice of flats below ``x`` (the localization at x)."""
        return FlatLattice(self.ground, [(f.atoms, f.rank) for f in self.below(x)])


class IntersectionLattice(FlatLattice):
    """Intersection lattice of a central arrangement.

    Flats are keyed by their closed sets of hyperplane indices; the
    integer basis of each flat's subspace is kept for subspace-level
    computations.
    """

    def __init__(self, arrangement: Arrangement, bases: dict):
        self.arrangement = arrangement
        flats = [(atoms, arrangement.dim - len(b)) for atoms, b in bases.items()]
        super().__init__(len(arrangement), flats)
        self._bases = {k: tuple(v) for k, v in bases.items()}

    def int_basis(self, f: Flat) -> tuple:
        return self._bases[f.atoms]

    def subspace(self, f: Flat) -> Subspace:
        return Subspace(self.arrangement.dim, self._bases[f.atoms])

    def flat_of_subspace(self, X: Subspace) -> Flat:
        atoms = frozenset(i for i, h in enumerate(self.arrangement) if X.inside(h))
        f = self.flat(atoms)
        if f.rank != X.codim:
            raise InputError("subspace is not an element of the intersection lattice")
        return f

    def with_subspace(self, f: Flat) -> Flat:
        return Flat(f.atoms, f.rank, self.subspace(f))


def _vanishes(n, basis) -> bool:
    return all(sum(map(mul, n, b)) == 0 for b in basis)


def build_lattice(A: Arrangement) -> IntersectionLattice:
    """Intersection lattice, built rank level by rank level.

    Level k+1 consists of the closures of (level-k flat + one hyperplane).
    Hyperplanes already swallowed by a cover found earlier give that same
    cover again and are skipped.
    """
    if not A.is_central:
        raise InputError("build_lattice needs a central arrangement")
    normals = [linalg.primitive(h.normal) for h in A]
    n, m = A.dim, len(normals)
    identity = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    bases = {frozenset(): identity}
    level = [frozenset()]
    while level:
        nxt = []
        for f in level:
            basis = bases[f]
            covered = set(f)
            for a in range(m):
                if a in covered:
                    continue
                cut = linalg.kernel_cut(basis, normals[a])
                closed = f | {a} | {e for e in range(m)
                                    if e not in covered and e != a and _vanishes(normals[e], cut)}
                covered |= closed
                if closed not in bases:
                    bases[closed] = cut
                    nxt.append(closed)
        level = nxt
    return IntersectionLattice(A, bases)


def build_lattice_bruteforce(A: Arrangement) -> FlatLattice:
    """Close every subset of hyperplanes (exponential; for cross-checks)."""
    from .arrangement import intersect_subset
    m = len(A)
    found = {}
    for mask in range(1 << m):
        S = [i for i in range(m) if mask >> i & 1]
        X = intersect_subset(A, S)
        closed = frozenset(i for i, h in enumerate(A) if X.inside(h))
        found[closed] = X.codim
    return FlatLattice(m, found.items())


def join(L: FlatLattice, x: Flat, y: Flat) -> Flat:
    return L.join(x, y)


def meet(L: FlatLattice, x: Flat, y: Flat) -> Flat:
    return L.meet(x, y)


def mobius(L: FlatLattice) -> dict:
    return L.mobius()


def characteristic_polynomial(L: FlatLattice) -> IntegerPolynomial:
    return L.characteristic_polynomial()


def poincare_polynomial(L: FlatLattice) -> IntegerPolynomial:
    return L.poincare_polynomial()


def affine_poincare(A: Arrangement) -> IntegerPolynomial:
    """Poincare polynomial of the complement of an affine arrangement."""
    from .arrangement import cone
    P = build_lattice(cone(A)).poincare_polynomial()
    return P.exact_div(IntegerPolynomial((1, 1)))


def affine_characteristic(A: Arrangement) -> IntegerPolynomial:
    from .arrangement import cone
    chi = build_lattice(cone(A)).characteristic_polynomial()
    return chi.exact_div(IntegerPolynomial((-1, 1)))
