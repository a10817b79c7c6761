"""Shared fixtures: standard arrangements, looped-graph enumeration, and
the two graphs used in the end-to-end scenarios."""

from functools import lru_cache
from itertools import combinations, permutations

from arrangements.families import boolean, braid, generic, type_b
from arrangements.graphs import LoopedGraph, build_a_gamma

# complete graph on four vertices with loops at 3 and 4
COMPLETE_TWO_LOOPS = LoopedGraph.complete(4, {3, 4})
# edges 12, 13, 24 and loops 1, 2, 3
THREE_EDGES = LoopedGraph(4, frozenset({(1, 2), (1, 3), (2, 4)}), frozenset({1, 2, 3}))


def all_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for em in range(1 << len(pairs)):
        edges = frozenset(p for k, p in enumerate(pairs) if em >> k & 1)
        for lm in range(1 << n):
            yield LoopedGraph(n, edges, frozenset(v + 1 for v in range(n) if lm >> v & 1))


def canonical(g):
    best = None
    for p in permutations(range(1, g.n + 1)):
        h = g.relabel({v: p[v - 1] for v in g.vertices})
        key = (tuple(sorted(h.edges)), tuple(sorted(h.loops)))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def graph_classes(n_max=4):
    """One representative per vertex-relabelling class, n = 1..n_max."""
    reps = {}
    for n in range(1, n_max + 1):
        for g in all_graphs(n):
            reps.setdefault((n, canonical(g)), g)
    return tuple(reps.values())


def standard_arrangements():
    out = [(f"boolean{k}", boolean(k)) for k in range(1, 5)]
    out += [(f"braid{k}", braid(k)) for k in range(2, 6)]
    out += [(f"typeB{k}", type_b(k)) for k in range(1, 4)]
    out.append(("U34", generic(3, 4)))
    return out


@lru_cache(maxsize=None)
def fixture_set():
    """Boolean <= 4, braid <= 5, type B <= 3, U34 and every A_Gamma class with n <= 4."""
    out = standard_arrangements()
    for g in graph_classes(4):
        out.append((f"gamma(n={g.n},E={sorted(g.edges)},L={sorted(g.loops)})", build_a_gamma(g)))
    return tuple(out)
