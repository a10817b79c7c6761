from hypothesis import strategies as st

from arrangements.arrangement import Arrangement, Hyperplane


def _nonzero(v):
    return any(v)


@st.composite
def central_arrangements(draw, min_dim=1, max_dim=3, max_size=6, coeff=2):
    d = draw(st.integers(min_dim, max_dim))
    vecs = draw(st.lists(st.lists(st.integers(-coeff, coeff), min_size=d, max_size=d)
                         .filter(_nonzero), max_size=max_size))
    return Arrangement.simplified(d, [Hyperplane(tuple(v)) for v in vecs])


@st.composite
def affine_arrangements(draw, max_dim=2, max_size=5, coeff=2):
    d = draw(st.integers(1, max_dim))
    items = draw(st.lists(st.tuples(st.lists(st.integers(-coeff, coeff), min_size=d, max_size=d)
                                    .filter(_nonzero), st.integers(-2, 2)), max_size=max_size))
    return Arrangement.simplified(d, [Hyperplane(tuple(v), b) for v, b in items], "affine")
