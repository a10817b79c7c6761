from fractions import Fraction

import pytest
from hypothesis import given, settings

from arrangements.errors import InputError
from arrangements.families import type_b
from arrangements.jsonio import (arrangement_from_json, arrangement_to_json, dumps,
                                 lattice_to_json, parse_index_list, polynomial_to_json)
from arrangements.lattice import build_lattice
from arrangements.polynomial import IntegerPolynomial
from strategies import affine_arrangements, central_arrangements


@settings(max_examples=50, deadline=None)
@given(central_arrangements())
def test_round_trip_central(A):
    assert arrangement_from_json(arrangement_to_json(A)) == A


@settings(max_examples=50, deadline=None)
@given(affine_arrangements())
def test_round_trip_affine(A):
    assert arrangement_from_json(arrangement_to_json(A)) == A


def test_rationals_are_strings():
    data = {"dim": 2, "kind": "affine", "hyperplanes": [{"normal": ["1/3", 2], "offset": "-1/2"}]}
    A = arrangement_from_json(data)
    # stored with leading coefficient one
    assert A[0].normal == (1, 6) and A[0].offset == Fraction(-3, 2)
    out = arrangement_to_json(A)
    assert out["hyperplanes"][0] == {"normal": ["1", "6"], "offset": "-3/2"}
    with pytest.raises(InputError):
        arrangement_from_json(dict(data, kind="central"))


@pytest.mark.parametrize("bad", [
    [],
    {"hyperplanes": []},
    {"dim": "2", "hyperplanes": []},
    {"dim": 2, "kind": "projective", "hyperplanes": []},
    {"dim": 2, "hyperplanes": [{"normal": [0.5, 1]}]},
    {"dim": 2, "hyperplanes": [{"normal": ["a", 1]}]},
    {"dim": 2, "hyperplanes": [{"normal": [1]}]},
    {"dim": 2, "hyperplanes": [{"offset": 1}]},
    {"dim": 2, "hyperplanes": [{"normal": [0, 0]}]},
])
def test_bad_input(bad):
    with pytest.raises(InputError):
        arrangement_from_json(bad)


def test_lattice_and_polynomial_json():
    L = build_lattice(type_b(2))
    data = lattice_to_json(L)
    assert data[0] == {"atoms": [], "rank": 0, "mobius": 1}
    assert sum(f["mobius"] for f in data) == 0
    assert polynomial_to_json(IntegerPolynomial(())) == [0]
    assert polynomial_to_json(IntegerPolynomial((3, 0, 1))) == [3, 0, 1]


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1]}) == dumps({"a": [1], "b": 1})


def test_index_lists():
    assert parse_index_list("") == []
    assert parse_index_list("3, 1,2") == [3, 1, 2]
    with pytest.raises(InputError):
        parse_index_list("1,x")
