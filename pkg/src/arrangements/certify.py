"""Rule-based K(pi,1) certification with independently checkable proofs.

Positive rules: rank at most two, supersolvability, a modular fibration
whose base and fiber are both certified, and explicitly supplied axioms.
Negative rules: a simple triangle in a real rank-3 arrangement, a modular
fibration with aspherical base and non-aspherical fiber, and the converse
propagation from a non-aspherical total space to its fibers.

A simple triangle is read on the given real realization: three hyperplanes
of rank three whose pairwise intersections are double lines and which bound
a triangular chamber of the real projective picture.  Whether a triangle
appears can depend on which real form of a fiber is chosen.
"""

import threading
from dataclasses import dataclass, field
from itertools import combinations

from . import linalg
from .arrangement import Arrangement, generic_point, localization
from .errors import Contradiction, DepthExceeded, InputError, InternalInconsistency, WrongRank
from .isomorphism import lattice_isomorphic
from .lattice import build_lattice
from .modularity import is_modular, is_supersolvable, modular_flats
from .truncation import abstract_truncation, geometric_truncation

ASPHERICAL = "aspherical"
NOT_ASPHERICAL = "not_aspherical"
UNKNOWN = "unknown"

RULES = ("rank", "axiom", "supersolvable", "triangle", "fibration")


# -- proof nodes -------------------------------------------------------------

def _rat(x) -> str:
    return str(x)


@dataclass(frozen=True)
class RankAtMostTwo:
    rank: int

    def to_json(self):
        return {"RankAtMostTwo": self.rank}


@dataclass(frozen=True)
class Supersolvable:
    chain: tuple  # atom sets, bottom to top

    def to_json(self):
        return {"Supersolvable": [sorted(c) for c in self.chain]}


@dataclass(frozen=True)
class SimpleTriangle:
    hyperplanes: tuple

    def to_json(self):
        return {"SimpleTriangle": list(self.hyperplanes)}


@dataclass(frozen=True)
class Axiom:
    citation: str

    def to_json(self):
        return {"Axiom": self.citation}


@dataclass(frozen=True)
class ModularFibration:
    flat: tuple
    point: tuple
    base: "Certificate"
    fiber: "Certificate"

    def to_json(self):
        return {"ModularFibration": _fibration_json(self)}


@dataclass(frozen=True)
class FiberNotAspherical:
    flat: tuple
    point: tuple  # None when the fiber was matched by lattice isomorphism
    base: "Certificate"
    fiber: "Certificate"

    def to_json(self):
        return {"FiberNotAspherical": _fibration_json(self)}


@dataclass(frozen=True)
class TotalNotAspherical:
    flat: tuple
    base: "Certificate"
    total: "Certificate"

    def to_json(self):
        return {"TotalNotAspherical": {"flat": list(self.flat), "base": self.base.to_json(),
                                       "total": self.total.to_json()}}


def _fibration_json(node):
    out = {"flat": list(node.flat), "base": node.base.to_json(), "fiber": node.fiber.to_json()}
    if node.point is not None:
        out["point"] = [_rat(x) for x in node.point]
    return out


@dataclass(frozen=True)
class Certificate:
    verdict: str
    proof: object
    arrangement: Arrangement = field(compare=False, repr=False)
    derived: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict,
               "proof": self.proof.to_json() if self.proof is not None else None}
        if self.derived:
            from .jsonio import arrangement_to_json
            out["derived"] = [dict(arrangement=arrangement_to_json(c.arrangement), **c.to_json())
                              for c in self.derived]
        return out


@dataclass(frozen=True)
class AxiomFact:
    arrangement: Arrangement
    verdict: str
    citation: str


# -- simple triangles ----------------------------------------------------------

def _sign_pattern(coeffs):
    s = tuple(1 if c > 0 else -1 for c in coeffs)
    return s if s[0] > 0 else tuple(-x for x in s)


def simple_triangle(A: Arrangement, lattice=None):
    """First (lexicographic) simple triangle of a real rank-3 arrangement.

    The triple must have rank three, each pairwise intersection must lie on
    no other hyperplane, and every other form, written in the triple's
    coordinates, must show the same sign pattern up to a global sign; that
    is exactly the condition that one of the four triangles cut out by the
    triple in the projective plane is crossed by no other line.  At least
    one hyperplane outside the triple is required.
    """
    L = lattice or build_lattice(A)
    if L.rank != 3:
        raise WrongRank(f"simple triangles live in rank 3, not rank {L.rank}")
    n = len(A)
    if n < 4:
        return None
    double = {(a, b): len(L.closure([a, b]).atoms) == 2 for a, b in combinations(range(n), 2)}
    for a, b, c in combinations(range(n), 3):
        if not (double[(a, b)] and double[(a, c)] and double[(b, c)]):
            continue
        M = linalg.transpose([A[a].normal, A[b].normal, A[c].normal])
        if linalg.rank([A[a].normal, A[b].normal, A[c].normal], A.dim) != 3:
            continue
        patterns = set()
        for h in range(n):
            if h in (a, b, c):
                continue
            coeffs, _ = linalg.solve_affine(M, A[h].normal, 3)
            patterns.add(_sign_pattern(coeffs))
            if len(patterns) > 1:
                break
        if len(patterns) == 1:
            return (a, b, c)
    return None


# -- the engine ----------------------------------------------------------------

def _key(A: Arrangement):
    return (A.dim, A.hyperplanes)


def fibration_flats(L) -> list:
    """Modular flats usable as fibration centers: ``2 <= r(X) <= r - 1``.

    Atoms are excluded because the fiber over an atom is the arrangement
    itself again.
    """
    return [f for f in modular_flats(L) if 2 <= f.rank <= L.rank - 1]


class Certifier:
    """Certification with a shared memo; safe to use from several threads."""

    def __init__(self, axioms=(), depth_limit: int = 8, rules=RULES):
        if sorted(rules) != sorted(RULES):
            raise InputError(f"rules must be a permutation of {RULES}")
        self.axioms = tuple(axioms)
        self.depth_limit = depth_limit
        self.rules = tuple(rules)
        self._memo = {}
        self._lock = threading.Lock()

    # memo access is the only shared state
    def _lookup(self, A):
        with self._lock:
            return self._memo.get(_key(A))

    def _store(self, cert):
        with self._lock:
            return self._memo.setdefault(_key(cert.arrangement), cert)

    def known(self) -> list:
        with self._lock:
            return list(self._memo.values())

    def certify(self, A: Arrangement) -> Certificate:
        if not A.is_central:
            raise InputError("certification needs a central arrangement")
        self._certify(A, 0)
        derived = [c for c in self.saturate() if _key(c.arrangement) != _key(A)]
        cert = self._lookup(A)
        if derived:
            cert = Certificate(cert.verdict, cert.proof, cert.arrangement, tuple(derived))
        return cert

    def _certify(self, A: Arrangement, depth: int) -> Certificate:
        if depth > self.depth_limit:
            raise DepthExceeded(f"certification depth exceeds {self.depth_limit}")
        hit = self._lookup(A)
        if hit is not None:
            return hit
        L = build_lattice(A)
        cert = None
        for rule in self.rules:
            cert = getattr(self, "_rule_" + rule)(A, L, depth)
            if cert is not None:
                break
        if cert is None:
            cert = Certificate(UNKNOWN, None, A)
        if cert.verdict == NOT_ASPHERICAL and is_supersolvable(L) is not None:
            raise Contradiction("not_aspherical certificate for a supersolvable arrangement",
                                cert, None)
        return self._store(cert)

    def _rule_rank(self, A, L, depth):
        if L.rank <= 2:
            return Certificate(ASPHERICAL, RankAtMostTwo(L.rank), A)

    def _rule_axiom(self, A, L, depth):
        for fact in self.axioms:
            if lattice_isomorphic(L, build_lattice(fact.arrangement)) is not None:
                return Certificate(fact.verdict, Axiom(fact.citation), A)

    def _rule_supersolvable(self, A, L, depth):
        chain = is_supersolvable(L)
        if chain is not None:
            return Certificate(ASPHERICAL, Supersolvable(tuple(tuple(sorted(f.atoms))
                                                               for f in chain)), A)

    def _rule_triangle(self, A, L, depth):
        if L.rank == 3:
            tri = simple_triangle(A, L)
            if tri is not None:
                return Certificate(NOT_ASPHERICAL, SimpleTriangle(tri), A)

    def fibration(self, A, X, point=None, lattice=None, depth: int = 0):
        """Certify base and fiber of the fibration centered at flat ``X``."""
        L = lattice or build_lattice(A)
        S = L.subspace(X)
        base_arr = localization(A, S)
        v = point if point is not None else generic_point(base_arr)
        base = self._certify(base_arr, depth + 1)
        fiber = self._certify(geometric_truncation(A, S, v), depth + 1)
        return base, fiber, tuple(v)

    def fibration_certificate(self, A, X, point=None, lattice=None, depth: int = 0):
        """Decide ``A`` through the fibration at ``X`` alone, or ``None``.

        Needs an aspherical base; the verdict is then the fiber's, when the
        fiber is decided.
        """
        L = lattice or build_lattice(A)
        base, fiber, v = self.fibration(A, X, point, L, depth)
        if base.verdict != ASPHERICAL:
            return None
        flat = tuple(sorted(X.atoms))
        if fiber.verdict == ASPHERICAL:
            return Certificate(ASPHERICAL, ModularFibration(flat, v, base, fiber), A)
        if fiber.verdict == NOT_ASPHERICAL:
            return Certificate(NOT_ASPHERICAL, FiberNotAspherical(flat, v, base, fiber), A)
        return None

    def _rule_fibration(self, A, L, depth):
        for X in fibration_flats(L):
            cert = self.fibration_certificate(A, X, lattice=L, depth=depth)
            if cert is not None:
                return cert

    def saturate(self) -> list:
        """Propagate non-asphericity from total spaces to fibers.

        The working set is the memo, first enlarged by the fibers (at the
        deterministic base point) of every non-aspherical member over each
        center with an aspherical base.
        """
        done = set()
        while True:
            todo = [c for c in self.known()
                    if c.verdict == NOT_ASPHERICAL and _key(c.arrangement) not in done]
            if not todo:
                break
            for cert in todo:
                done.add(_key(cert.arrangement))
                L = build_lattice(cert.arrangement)
                for X in fibration_flats(L):
                    self.fibration(cert.arrangement, X, lattice=L)
        before = {_key(c.arrangement): c.verdict for c in self.known()}
        catalog = propagate_negatives(self.known(), self)
        derived = []
        for cert in catalog:
            if before.get(_key(cert.arrangement)) != cert.verdict:
                if is_supersolvable(build_lattice(cert.arrangement)) is not None:
                    raise Contradiction("propagation reached a supersolvable arrangement",
                                        cert, None)
                with self._lock:
                    self._memo[_key(cert.arrangement)] = cert
                derived.append(cert)
        return derived


def certify(A: Arrangement, depth_limit: int = 8, axioms=(), rules=RULES) -> Certificate:
    return Certifier(axioms, depth_limit, rules).certify(A)


# -- propagation over a catalog ------------------------------------------------

def _conflict(old, new):
    return {old.verdict, new.verdict} == {ASPHERICAL, NOT_ASPHERICAL}


def propagate_negatives(catalog, certifier: Certifier = None) -> list:
    """Saturate a list of certificates under the two negative fibration rules.

    Fibers are matched to catalog entries by lattice isomorphism with the
    complete principal truncation, which is the lattice of every fiber of a
    modular flat.  Returns the updated list in the original order.
    """
    certifier = certifier or Certifier()
    entries = list(catalog)
    for i, a in enumerate(entries):
        for b in entries[i + 1:]:
            if _key(a.arrangement) == _key(b.arrangement) and _conflict(a, b):
                raise Contradiction("catalog certifies one arrangement both ways", a, b)
    lattices = [build_lattice(c.arrangement) for c in entries]
    fibrations = []  # (total index, flat, base cert, fiber indices)
    for i, (cert, L) in enumerate(zip(entries, lattices)):
        for X in fibration_flats(L):
            base = certifier._certify(localization(cert.arrangement, L.subspace(X)), 1)
            if base.verdict != ASPHERICAL:
                continue
            T = abstract_truncation(L, X)
            fibers = [j for j, M in enumerate(lattices)
                      if j != i and lattice_isomorphic(M, T) is not None]
            if fibers:
                fibrations.append((i, tuple(sorted(X.atoms)), base, fibers))
    changed = True
    while changed:
        changed = False
        for i, flat, base, fibers in fibrations:
            total = entries[i]
            for j in fibers:
                fiber = entries[j]
                if total.verdict == NOT_ASPHERICAL and fiber.verdict != NOT_ASPHERICAL:
                    new = Certificate(NOT_ASPHERICAL, TotalNotAspherical(flat, base, total),
                                      fiber.arrangement)
                    if _conflict(fiber, new):
                        raise Contradiction("fiber of a non-aspherical fibration is aspherical",
                                            fiber, new)
                    entries[j] = new
                    changed = True
                elif fiber.verdict == NOT_ASPHERICAL and total.verdict != NOT_ASPHERICAL:
                    new = Certificate(NOT_ASPHERICAL, FiberNotAspherical(flat, None, base, fiber),
                                      total.arrangement)
                    if _conflict(total, new):
                        raise Contradiction("total space with a non-aspherical fiber is aspherical",
                                            total, new)
                    entries[i] = new
                    changed = True
    return entries


# -- independent checking ------------------------------------------------------

class InvalidCertificate(InternalInconsistency):
    pass


def _fail(msg):
    raise InvalidCertificate(msg)


def check_certificate(cert: Certificate, axioms=()) -> bool:
    """Re-derive every step of ``cert`` from scratch; raise on any flaw."""
    A, p = cert.arrangement, cert.proof
    L = build_lattice(A)
    if p is None:
        if cert.verdict != UNKNOWN:
            _fail("decided verdict without a proof")
        return True
    if isinstance(p, RankAtMostTwo):
        if cert.verdict != ASPHERICAL or L.rank > 2 or p.rank != L.rank:
            _fail("rank rule misapplied")
    elif isinstance(p, Supersolvable):
        if cert.verdict != ASPHERICAL:
            _fail("supersolvable proof with a negative verdict")
        chain = [L.flat(c) for c in p.chain]
        if [f.rank for f in chain] != list(range(L.rank + 1)):
            _fail("chain is not maximal")
        if any(not chain[k].atoms <= chain[k + 1].atoms for k in range(len(chain) - 1)):
            _fail("chain is not increasing")
        if not all(is_modular(L, f) for f in chain):
            _fail("chain contains a non-modular flat")
    elif isinstance(p, SimpleTriangle):
        if cert.verdict != NOT_ASPHERICAL or L.rank != 3:
            _fail("triangle rule misapplied")
        _check_triangle(A, L, p.hyperplanes)
    elif isinstance(p, Axiom):
        ok = any(f.citation == p.citation and f.verdict == cert.verdict
                 and lattice_isomorphic(L, build_lattice(f.arrangement)) is not None
                 for f in axioms)
        if not ok:
            _fail(f"no matching axiom for citation {p.citation!r}")
    elif isinstance(p, (ModularFibration, FiberNotAspherical)):
        want = ASPHERICAL if isinstance(p, ModularFibration) else NOT_ASPHERICAL
        if cert.verdict != want:
            _fail("fibration verdict does not follow from its parts")
        X = _check_center(L, p.flat)
        S = L.subspace(X)
        _check_part(p.base, localization(A, S), ASPHERICAL, axioms)
        fiber_want = ASPHERICAL if want == ASPHERICAL else NOT_ASPHERICAL
        if p.point is not None:
            _check_part(p.fiber, geometric_truncation(A, S, p.point), fiber_want, axioms)
        else:
            if lattice_isomorphic(build_lattice(p.fiber.arrangement),
                                  abstract_truncation(L, X)) is None:
                _fail("fiber lattice is not the truncation")
            if p.fiber.verdict != fiber_want:
                _fail("fiber verdict mismatch")
            check_certificate(p.fiber, axioms)
    elif isinstance(p, TotalNotAspherical):
        if cert.verdict != NOT_ASPHERICAL or p.total.verdict != NOT_ASPHERICAL:
            _fail("propagation from a total space that is not known non-aspherical")
        T = p.total.arrangement
        LT = build_lattice(T)
        X = _check_center(LT, p.flat)
        _check_part(p.base, localization(T, LT.subspace(X)), ASPHERICAL, axioms)
        if lattice_isomorphic(L, abstract_truncation(LT, X)) is None:
            _fail("arrangement is not a fiber of the claimed fibration")
        check_certificate(p.total, axioms)
    else:
        _fail(f"unknown proof node {type(p).__name__}")
    return True


def _check_center(L, flat):
    if frozenset(flat) not in L:
        _fail(f"{list(flat)} is not a flat")
    X = L.flat(flat)
    if not 2 <= X.rank <= L.rank - 1 or not is_modular(L, X, check_sum=True):
        _fail(f"{list(flat)} is not a modular fibration center")
    return X


def _check_part(cert, expected: Arrangement, verdict, axioms):
    if _key(cert.arrangement) != _key(expected):
        _fail("sub-certificate is about a different arrangement")
    if cert.verdict != verdict:
        _fail(f"sub-certificate verdict {cert.verdict}, needed {verdict}")
    check_certificate(cert, axioms)


def _check_triangle(A, L, tri):
    a, b, c = tri
    if len({a, b, c}) != 3 or len(A) < 4:
        _fail("degenerate triangle")
    for x, y in ((a, b), (a, c), (b, c)):
        if len(L.closure([x, y]).atoms) != 2:
            _fail(f"vertex {x},{y} is not a double point")
    rows = [A[a].normal, A[b].normal, A[c].normal]
    if linalg.rank(rows, A.dim) != 3:
        _fail("triangle hyperplanes are not in general position")
    M = linalg.transpose(rows)
    for h in range(len(A)):
        if h in tri:
            continue
        coeffs, _ = linalg.solve_affine(M, A[h].normal, 3)
        if any(x == 0 for x in coeffs):
            _fail("a hyperplane passes through a vertex")
    pats = {_sign_pattern(linalg.solve_affine(M, A[h].normal, 3)[0])
            for h in range(len(A)) if h not in tri}
    if len(pats) != 1:
        _fail("some hyperplane crosses the triangle")
