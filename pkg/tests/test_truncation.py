from fractions import Fraction

import pytest
from hypothesis import given, settings

from arrangements.arrangement import Subspace, cone, decone
from arrangements.errors import InputError
from arrangements.families import braid, generic, type_b
from arrangements.isomorphism import lattice_isomorphic
from arrangements.lattice import build_lattice
from arrangements.modularity import is_modular
from arrangements.polynomial import IntegerPolynomial
from arrangements.truncation import (abstract_truncation, factorization_check,
                                     geometric_truncation, iterated_truncation,
                                     modularity_by_sampling, principal_truncation,
                                     sample_points, verify_truncation_theorem)
from strategies import central_arrangements


def test_atom_truncation_is_identity():
    A = type_b(3)
    L = build_lattice(A)
    for a in L.atoms:
        T = abstract_truncation(L, a)
        assert lattice_isomorphic(T, L) is not None
        assert all(T.rank_fn(y) == y.rank for y in T.elements.values())


def test_top_of_braid3():
    L = build_lattice(braid(3))
    T = abstract_truncation(L, L.top)
    assert T.rank == 1 and len(T.atoms) == 1


def test_bottom_rejected():
    L = build_lattice(braid(3))
    with pytest.raises(InputError):
        abstract_truncation(L, L.bottom)


def test_geometric_truncation_at_atom():
    A = type_b(2)
    G = geometric_truncation(A, [0], (Fraction(3),))
    assert lattice_isomorphic(build_lattice(G), build_lattice(A)) is not None


def test_verify_theorem_examples():
    A = braid(4)
    rep = verify_truncation_theorem(A, [0, 1], samples=5)
    assert rep.all_isomorphic and len(rep.points) == 5
    rep = verify_truncation_theorem(type_b(3), [0], samples=3)
    assert rep.all_isomorphic
    with pytest.raises(InputError):
        verify_truncation_theorem(generic(3, 4), [0, 1])


def test_sampling_examples():
    A = braid(4)
    assert modularity_by_sampling(A, [0, 1]).verdict == "constant"
    assert modularity_by_sampling(A, Subspace.whole(4)).verdict == "constant"
    rep = modularity_by_sampling(generic(3, 4), [0, 1])
    assert rep.verdict == "varies" and rep.witnesses is not None


def test_factorization_at_atom_is_cone_decone():
    A = type_b(3)
    for i in range(len(A)):
        rep = factorization_check(A, [i])
        assert rep.holds
        assert rep.poincare_base == IntegerPolynomial((1, 1))


def test_factorization_detects_failure_without_raising():
    rep = factorization_check(generic(3, 4), [0, 1])
    assert isinstance(rep.holds, bool)


def test_principal_truncation_lowers_top_rank():
    L = build_lattice(braid(4))
    T = principal_truncation(L, L.flat({0}))
    assert T.rank == L.rank - 1


def test_sample_points_avoid_localization():
    A = braid(4)
    L = build_lattice(A)
    X = L.closure({0, 1})
    pts = sample_points(A, L.subspace(X), 5)
    assert len(set(pts)) == 5


@settings(max_examples=30, deadline=None)
@given(central_arrangements(min_dim=2, max_size=6))
def test_truncation_properties(A):
    L = build_lattice(A)
    for X in L.flats:
        if X.rank < 1:
            continue
        T = abstract_truncation(L, X)
        assert T.rank == L.rank - X.rank + 1
        assert lattice_isomorphic(iterated_truncation(L, X), T) is not None
        if is_modular(L, X):
            S = L.subspace(X)
            for v in sample_points(A, S, 2):
                G = build_lattice(geometric_truncation(A, S, v))
                assert lattice_isomorphic(G, T) is not None
            rep = factorization_check(A, S, lattice=L)
            assert rep.holds


@settings(max_examples=30, deadline=None)
@given(central_arrangements(min_dim=2, max_size=6))
def test_cone_decone_poincare(A):
    if not len(A):
        return
    D = decone(A, 0)
    from arrangements.lattice import affine_poincare
    assert affine_poincare(D) * IntegerPolynomial((1, 1)) == build_lattice(A).poincare_polynomial()
    assert lattice_isomorphic(build_lattice(cone(D)), build_lattice(A)) is not None


def test_truncation_along_non_modular_line():
    A = generic(3, 4)
    L = build_lattice(A)
    X = L.flat({0, 1})
    T = abstract_truncation(L, X)
    # the line collapses to a point, leaving three points on a projective line
    assert T.rank == 2 and len(T.atoms) == 3
    assert lattice_isomorphic(iterated_truncation(L, X), T) is not None
    # a generic fiber still realizes it
    v = sample_points(A, L.subspace(X), 1)[0]
    assert lattice_isomorphic(build_lattice(geometric_truncation(A, L.subspace(X), v)), T)
