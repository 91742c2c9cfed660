import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from z4expand.z4algebra import (
    Z4Matrix,
    Z4Vector,
    add,
    euclidean_weight,
    inner_product,
    lee_weight,
    scale,
    weights,
)

from oracles import weights as naive_weights

vecs = st.lists(st.integers(0, 3), min_size=1, max_size=12)


def test_parse_and_str():
    v = Z4Vector("1032")
    assert list(v) == [1, 0, 3, 2]
    assert str(v) == "1032"


def test_rejects_empty_and_bad_digits():
    with pytest.raises(ValueError):
        Z4Vector([])
    with pytest.raises(ValueError):
        Z4Vector("1a2")
    with pytest.raises(ValueError):
        Z4Vector([4, 0])


def test_immutable():
    v = Z4Vector("12")
    with pytest.raises(AttributeError):
        v.x = 1


def test_length_mismatch():
    with pytest.raises(ValueError):
        add(Z4Vector("12"), Z4Vector("123"))
    with pytest.raises(ValueError):
        inner_product(Z4Vector("12"), Z4Vector("123"))


def test_weights_example():
    w = weights(Z4Vector("0123"))
    assert (w.lee, w.euclidean, w.symbol_counts) == (4, 6, (1, 1, 1, 1))


@given(vecs)
def test_weights_match_oracle(xs):
    v = Z4Vector(xs)
    assert (lee_weight(v), euclidean_weight(v)) == naive_weights(xs)


@given(vecs, st.integers(-5, 5))
def test_ring_laws(xs, a):
    v = Z4Vector(xs)
    assert add(v, scale(3, v)) == Z4Vector([0] * len(xs))
    assert scale(a, v) == Z4Vector([a * x % 4 for x in xs])
    assert inner_product(v, v) == sum(x * x for x in xs) % 4


@given(vecs)
def test_euclidean_self_inner_product(xs):
    v = Z4Vector(xs)
    assert euclidean_weight(v) % 4 == inner_product(v, v)


def test_matrix_basics():
    g = Z4Matrix(["1111", "0220"])
    assert g.shape == (2, 4) and g.n == 4 and g.nrows == 2
    assert g[1] == Z4Vector("0220")
    assert Z4Matrix.parse("1111\n\n0220\n") == g
    assert g.stack("0022").nrows == 3
    assert str(g.permute_columns([3, 2, 1, 0])) == "1111\n0220"
    assert np.array_equal(g.gram(), [[0, 0], [0, 0]])


def test_matrix_errors():
    with pytest.raises(ValueError):
        Z4Matrix([])
    with pytest.raises(ValueError):
        Z4Matrix(["11", "111"])


def test_planes():
    lo, hi = Z4Matrix(["0123"]).planes()
    assert int(lo[0]) == 0b1010 and int(hi[0]) == 0b1100
    assert Z4Vector("0123").planes() == (0b1010, 0b1100)
