import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrangements.errors import InexactDivision
from arrangements.polynomial import ONE, T, IntegerPolynomial

polys = st.lists(st.integers(-6, 6), max_size=5).map(lambda c: IntegerPolynomial(tuple(c)))


def test_trailing_zeros_stripped():
    assert IntegerPolynomial((1, 2, 0, 0)).coefficients == (1, 2)
    assert IntegerPolynomial((0, 0)).is_zero()


def test_from_roots_and_str():
    p = IntegerPolynomial.from_roots([1, 2])
    assert p.coefficients == (2, -3, 1)
    assert str(p) == "t^2 - 3t + 2"


def test_exact_division():
    p = IntegerPolynomial.from_roots([1, 3, 5])
    assert p.exact_div(T - ONE) == IntegerPolynomial.from_roots([3, 5])
    with pytest.raises(InexactDivision):
        p.exact_div(T + ONE)


def test_evaluation():
    assert IntegerPolynomial.from_roots([1, 2])(3) == 2


@given(polys, polys)
def test_ring_laws(p, q):
    assert p * q == q * p
    assert (p + q) - q == p
    assert (p * q)(2) == p(2) * q(2)


@given(polys, polys.filter(lambda q: not q.is_zero() and abs(q.coefficients[-1]) == 1))
def test_divmod_identity(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree
