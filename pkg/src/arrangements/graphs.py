"""Subarrangements of B_n containing the braid arrangement, indexed by
graphs with loops, and the graph-theoretic criteria on them.

Vertices are 1..n as in the usual convention; hyperplane indices are
0-based positions in ``build_a_gamma`` order.
"""

from dataclasses import dataclass
from itertools import combinations

from .arrangement import Arrangement
from .errors import CriterionLatticeMismatch, InputError
from .lattice import build_lattice
from .modularity import is_modular, is_supersolvable

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class LoopedGraph:
    n: int
    edges: frozenset = frozenset()
    loops: frozenset = frozenset()

    def __post_init__(self):
        edges = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise InputError("use loops for i == j, not edges")
            if not (1 <= i and j <= self.n):
                raise InputError(f"edge {i}-{j} out of range")
            edges.add((i, j))
        loops = frozenset(self.loops)
        if any(not 1 <= v <= self.n for v in loops):
            raise InputError("loop vertex out of range")
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "loops", loops)

    @classmethod
    def complete(cls, n, loops=()):
        return cls(n, frozenset(combinations(range(1, n + 1), 2)), frozenset(loops))

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def has_edge(self, i, j) -> bool:
        return tuple(sorted((i, j))) in self.edges

    def neighbors(self, v) -> set:
        return {j for e in self.edges if v in e for j in e if j != v}

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def loopless_edges(self) -> list:
        return sorted(e for e in self.edges if not (set(e) & self.loops))

    def relabel(self, mapping: dict):
        return LoopedGraph(self.n, frozenset((mapping[i], mapping[j]) for i, j in self.edges),
                           frozenset(mapping[v] for v in self.loops))

    def moved_to_front(self, front):
        """Relabel so ``front`` becomes 1..k and the rest keep their order after it."""
        front = list(front)
        rest = [v for v in self.vertices if v not in front]
        mapping = {v: k + 1 for k, v in enumerate(front + rest)}
        return self.relabel(mapping), mapping


def build_a_gamma(g: LoopedGraph) -> Arrangement:
    n = g.n
    pairs = list(combinations(range(n), 2))

    def form(terms):
        v = [0] * n
        for k, c in terms:
            v[k] += c
        return tuple(v)

    forms = [form([(i, 1), (j, -1)]) for i, j in pairs]
    forms += [form([(i, 1), (j, 1)]) for i, j in pairs if (i + 1, j + 1) in g.edges]
    forms += [form([(v - 1, 1)]) for v in sorted(g.loops)]
    return Arrangement.central(n, forms)


def hyperplane_labels(g: LoopedGraph) -> list:
    pairs = list(combinations(range(1, g.n + 1), 2))
    labels = [f"H{i}{j}" for i, j in pairs]
    labels += [f"Hbar{i}{j}" for i, j in pairs if (i, j) in g.edges]
    labels += [f"H{v}" for v in sorted(g.loops)]
    return labels


def coordinate_flat(g: LoopedGraph, vertices) -> frozenset:
    """Indices of the hyperplanes of A_Gamma involving only ``vertices``.

    These are exactly the hyperplanes containing ``{x_v = 0 : v in vertices}``,
    so the set is always closed.
    """
    vs = set(vertices)
    pairs = list(combinations(range(1, g.n + 1), 2))
    idx, k = [], 0
    for i, j in pairs:
        if i in vs and j in vs:
            idx.append(k)
        k += 1
    for i, j in pairs:
        if (i, j) in g.edges:
            if i in vs and j in vs:
                idx.append(k)
            k += 1
    for v in sorted(g.loops):
        if v in vs:
            idx.append(k)
        k += 1
    return frozenset(idx)


def threshold_order(g: LoopedGraph):
    """Elimination order of isolated/dominating vertices, or ``None``."""
    alive = set(g.vertices)
    order = []
    while alive:
        for v in sorted(alive):
            nb = g.neighbors(v) & alive
            if not nb or nb == alive - {v}:
                order.append(v)
                alive.discard(v)
                break
        else:
            return None
    return order


def is_threshold(g: LoopedGraph) -> bool:
    return threshold_order(g) is not None


def free_criterion(g: LoopedGraph) -> bool:
    if not is_threshold(g):
        return False
    for i in g.loops:
        for j in g.vertices:
            if g.degree(j) > g.degree(i) and j not in g.loops:
                return False
    return True


def supersolvable_criterion(g: LoopedGraph) -> str:
    """``no`` when not free (supersolvable arrangements are free), ``yes``
    when free without loopless edges, ``unknown`` otherwise."""
    if not free_criterion(g):
        return NO
    return UNKNOWN if g.loopless_edges() else YES


def factored_criterion(g: LoopedGraph) -> str:
    if free_criterion(g) and len(g.loopless_edges()) <= 1:
        return YES
    return UNKNOWN


def _copoint_conditions(g: LoopedGraph) -> bool:
    if 1 in g.loops and g.loops != frozenset(g.vertices):
        return False
    for j in g.neighbors(1):
        if j not in g.loops:
            return False
        if g.neighbors(j) != set(g.vertices) - {j}:
            return False
    return True


def _coline_conditions(g: LoopedGraph, literal: bool = False) -> bool:
    tail = set(range(3, g.n + 1))
    if (1 in g.loops or 2 in g.loops) and not tail <= g.loops:
        return False
    for i in (1, 2):
        for j in g.neighbors(i):
            if j < 3:
                continue
            if j not in g.loops:
                return False
            if not (tail - {j}) <= g.neighbors(j):
                return False
    if g.has_edge(1, 2):
        if not tail <= g.loops:
            return False
        # x1 = -x2 together with x1 = xj, x2 = xk forces xj = -xk on the sum
        if not literal and not all(g.has_edge(a, b) for a, b in combinations(sorted(tail), 2)):
            return False
    return True


def _lattice_modular(g: LoopedGraph, vertices, corank: int, lattice=None):
    """Direct lattice answer, or ``None`` when the lattice is too small to
    have a flat of the requested corank at all."""
    L = lattice or build_lattice(build_a_gamma(g))
    if L.rank < corank:
        return None
    f = L.flat(coordinate_flat(g, vertices))
    return L.corank(f) == corank and is_modular(L, f).is_modular


def copoint_criterion(g: LoopedGraph, vertex: int = 1, check: bool = True, lattice=None) -> bool:
    """Whether removing ``vertex`` leaves a modular copoint.

    The graph is relabelled so ``vertex`` becomes 1 and the remaining
    vertices occupy 2..n; with ``check`` the answer is compared with the
    lattice computation.
    """
    h, _ = g.moved_to_front([vertex])
    verdict = _copoint_conditions(h)
    if check:
        rest = [v for v in g.vertices if v != vertex]
        direct = _lattice_modular(g, rest, 1, lattice)
        if direct is not None and direct != verdict:
            raise CriterionLatticeMismatch(
                f"copoint criterion says {verdict}, lattice says {direct} for {g}")
    return verdict


def coline_criterion(g: LoopedGraph, removed=(1, 2), check: bool = True, lattice=None,
                     literal: bool = False) -> bool:
    """Whether deleting the two ``removed`` vertices leaves a modular coline.

    After relabelling ``removed`` to 1, 2 the conditions are: a loop at 1 or
    2 forces loops on all of 3..n; an edge ij with i in {1, 2} and j >= 3
    forces a loop at j and j adjacent to every other vertex of 3..n; the
    edge 12 forces loops on all of 3..n and a complete graph on 3..n.  The
    last completeness requirement is missing from the commonly quoted form
    of the lemma; ``literal=True`` drops it (and is then wrong, e.g. for
    edge 12 with loops 3, 4 on four vertices).
    """
    h, _ = g.moved_to_front(list(removed))
    verdict = _coline_conditions(h, literal)
    if check:
        rest = [v for v in g.vertices if v not in removed]
        direct = _lattice_modular(g, rest, 2, lattice)
        if direct is not None and direct != verdict:
            raise CriterionLatticeMismatch(
                f"coline criterion says {verdict}, lattice says {direct} for {g}")
    return verdict


def classify(g: LoopedGraph) -> dict:
    """All criteria plus lattice-verified modular copoints/colines."""
    from .modularity import modular_colines, modular_copoints
    A = build_a_gamma(g)
    L = build_lattice(A)
    chain = is_supersolvable(L)
    copoints = {}
    for v in g.vertices:
        copoints[v] = copoint_criterion(g, v, lattice=L)
    colines = {}
    for a, b in combinations(g.vertices, 2):
        colines[(a, b)] = coline_criterion(g, (a, b), lattice=L)
    return {
        "arrangement": A,
        "threshold": is_threshold(g),
        "free": free_criterion(g),
        "supersolvable_criterion": supersolvable_criterion(g),
        "supersolvable_lattice": chain is not None,
        "factored": factored_criterion(g),
        "copoint_criterion": copoints,
        "coline_criterion": colines,
        "modular_copoints": modular_copoints(L),
        "modular_colines": modular_colines(L),
        "lattice": L,
    }
