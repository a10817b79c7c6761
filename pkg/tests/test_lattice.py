from itertools import combinations

import pytest
from hypothesis import given, settings

from arrangements.arrangement import Arrangement
from arrangements.families import boolean, braid, generic, pencil, type_b
from arrangements.lattice import (affine_characteristic, affine_poincare, build_lattice,
                                  build_lattice_bruteforce, characteristic_polynomial, join,
                                  meet, mobius, poincare_polynomial)
from arrangements.polynomial import IntegerPolynomial
from helpers import standard_arrangements
from oracles import deletion_contraction, powerset_lattice
from strategies import central_arrangements

P = IntegerPolynomial


def test_small_lattices():
    L = build_lattice(Arrangement(3, ()))
    assert len(L) == 1 and L.bottom == L.top
    assert len(build_lattice(pencil(3))) == 5
    assert len(build_lattice(braid(4))) == 15
    assert len(build_lattice(boolean(3))) == 8


def test_join_and_meet():
    L = build_lattice(braid(4))
    a, b = L.flat({0}), L.flat({5})  # x1=x2 and x3=x4
    j = join(L, a, b)
    assert j.rank == 2 and j.atoms == frozenset({0, 5})
    assert meet(L, a, b) == L.bottom
    c = L.flat({1})  # x1=x3
    assert join(L, a, c).atoms == frozenset({0, 1, 3})


def test_mobius_values():
    L = build_lattice(pencil(3))
    mu = mobius(L)
    assert mu[L.bottom] == 1
    assert all(mu[a] == -1 for a in L.atoms)
    assert mu[L.top] == 2


def test_characteristic_examples():
    assert characteristic_polynomial(build_lattice(Arrangement.central(1, [(1,)]))) == P((-1, 1))
    for k in range(1, 5):
        assert characteristic_polynomial(build_lattice(boolean(k))) == P.from_roots([1] * k)
    assert characteristic_polynomial(build_lattice(braid(3))) == P((2, -3, 1))


def test_poincare_examples():
    assert poincare_polynomial(build_lattice(Arrangement.central(1, [(1,)]))) == P((1, 1))
    expected = P((1,))
    for k in range(1, 5):
        expected = expected * P((1, 1))
        assert poincare_polynomial(build_lattice(boolean(k))) == expected
    assert poincare_polynomial(build_lattice(braid(3))) == P((1, 1)) * P((1, 2))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_poincare_of_braid_factors(k):
    # roots 1..k-1 of chi give factors (1 + j t)
    expected = P((1,))
    for j in range(1, k):
        expected = expected * P((1, j))
    assert poincare_polynomial(build_lattice(braid(k))) == expected


def test_affine_examples():
    assert affine_poincare(Arrangement.affine(1, [((1,), 0)])) == P((1, 1))
    assert affine_poincare(Arrangement(2, (), "affine")) == P((1,))
    parallel = Arrangement.affine(2, [((1, 0), 0), ((1, 0), 1)])
    assert affine_poincare(parallel) == P((1, 2))
    # graded by the rank of the intersection poset, which is one here
    assert affine_characteristic(parallel) == P((-2, 1))


@pytest.mark.parametrize("name,A", [(n, a) for n, a in standard_arrangements() if len(a) <= 7]
                         + [("pencil5", pencil(5)), ("generic3_6", generic(3, 6))])
def test_against_powerset_oracle(name, A):
    L = build_lattice(A)
    assert {f.atoms: f.rank for f in L.flats} == powerset_lattice(A.normals())


@pytest.mark.parametrize("name,A", [(n, a) for n, a in standard_arrangements() if len(a) <= 8])
def test_against_deletion_contraction(name, A):
    chi = characteristic_polynomial(build_lattice(A))
    shifted = (chi * P.monomial(A.dim - build_lattice(A).rank)).to_list()
    assert shifted == deletion_contraction(A.normals(), A.dim)


def test_fast_builder_matches_bruteforce():
    for _, A in standard_arrangements():
        if len(A) > 10:
            continue
        L, B = build_lattice(A), build_lattice_bruteforce(A)
        assert {f.atoms: f.rank for f in L.flats} == {f.atoms: f.rank for f in B.flats}


def _invariants(L):
    mu = mobius(L)
    if len(L) > 1:
        assert sum(mu.values()) == 0
        assert characteristic_polynomial(L)(1) == 0
    # atomistic: every flat is the join of its atoms
    for f in L.flats:
        assert L.closure(f.atoms) == f
    # semimodular rank
    for x, y in combinations(L.flats, 2):
        assert L.join(x, y).rank + L.meet(x, y).rank <= x.rank + y.rank
    # sign alternation of the Mobius function
    for f in L.flats:
        assert mu[f] * (-1) ** f.rank > 0


@settings(max_examples=60, deadline=None)
@given(central_arrangements(max_size=7))
def test_random_lattices(A):
    L = build_lattice(A)
    assert {f.atoms: f.rank for f in L.flats} == powerset_lattice(A.normals())
    _invariants(L)
    chi = characteristic_polynomial(L) * P.monomial(A.dim - L.rank)
    assert chi.to_list() == deletion_contraction(A.normals(), A.dim)
    Pt = poincare_polynomial(L)
    assert all(c >= 0 for c in Pt.to_list()) and Pt(1) == sum(abs(m) for m in mobius(L).values())


@pytest.mark.parametrize("A", [boolean(3), braid(4), type_b(3), generic(3, 4)])
def test_lattice_invariants_on_families(A):
    _invariants(build_lattice(A))
