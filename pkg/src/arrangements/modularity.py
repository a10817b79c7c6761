"""Modular pairs, modular flats and supersolvability."""

from dataclasses import dataclass

from . import linalg
from .errors import InternalInconsistency
from .lattice import Flat, FlatLattice, IntersectionLattice


@dataclass(frozen=True)
class ModularityReport:
    flat: Flat
    is_modular: bool
    witness: Flat = None
    deficit: int = 0  # r(X) + r(Y) - r(X v Y) - r(X ^ Y) at the witness

    def __bool__(self):
        return self.is_modular


def _rank_defect(L: FlatLattice, x: Flat, y: Flat) -> int:
    return x.rank + y.rank - L.join(x, y).rank - L.meet(x, y).rank


def sum_in_lattice(L: IntersectionLattice, x: Flat, y: Flat) -> bool:
    """Whether the subspace sum X + Y is an element of L.

    The hyperplanes containing X + Y are exactly those of the meet; X + Y is
    in L iff it equals the intersection of those hyperplanes, and since it
    is always contained there, comparing dimensions decides it.
    """
    bx, by = L.int_basis(x), L.int_basis(y)
    dim_sum = linalg.int_rank(list(bx) + list(by)) if (bx or by) else 0
    m = L.meet(x, y)
    return dim_sum == len(L.int_basis(m))


def is_modular_pair(L: FlatLattice, x: Flat, y: Flat) -> bool:
    by_rank = _rank_defect(L, x, y) == 0
    if isinstance(L, IntersectionLattice):
        by_sum = sum_in_lattice(L, x, y)
        if by_sum != by_rank:
            raise InternalInconsistency(
                f"rank test says {by_rank} but subspace-sum test says {by_sum} "
                f"for flats {x.sorted_atoms()} and {y.sorted_atoms()}")
    return by_rank


def is_modular(L: FlatLattice, x: Flat, check_sum: bool = False) -> ModularityReport:
    """Check ``x`` against every flat; the first failure is the witness.

    With ``check_sum`` each pair is also run through the subspace criterion.
    """
    if x.rank <= 1 or x == L.top:
        return ModularityReport(x, True)
    for y in L.flats:
        if check_sum:
            ok = is_modular_pair(L, x, y)
            d = 0 if ok else _rank_defect(L, x, y)
        else:
            d = _rank_defect(L, x, y)
        if d:
            return ModularityReport(x, False, y, d)
    return ModularityReport(x, True)


def modular_flats(L: FlatLattice) -> list:
    return [f for f in L.flats if is_modular(L, f).is_modular]


def modular_copoints(L: FlatLattice) -> list:
    return [f for f in modular_flats(L) if f.rank == L.rank - 1]


def modular_colines(L: FlatLattice) -> list:
    return [f for f in modular_flats(L) if f.rank == L.rank - 2]


def is_supersolvable(L: FlatLattice):
    """A maximal chain of modular flats, bottom to top, or ``None``.

    Depth-first from the top down through modular copoints of the current
    flat; dead ends are memoized.
    """
    modular = {f for f in modular_flats(L)}
    dead = set()

    def extend(chain):
        cur = chain[-1]
        if cur.rank == 0:
            return chain
        for f in L.flats:
            if f.rank == cur.rank - 1 and f in modular and f.atoms <= cur.atoms and f not in dead:
                found = extend(chain + [f])
                if found:
                    return found
                dead.add(f)
        return None

    chain = extend([L.top])
    return list(reversed(chain)) if chain else None
