import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdgroups.gf2 import Gf2Matrix, bits_to_mask, dot, mask_to_bits


def matrices(n):
    return st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n).map(
        lambda v: Gf2Matrix(np.array(v).reshape(n, n))
    )


def test_columns_round_trip():
    m = Gf2Matrix([[0, 1, 1], [1, 1, 0], [0, 0, 1]])
    assert m.columns() == (0b010, 0b011, 0b101)
    assert Gf2Matrix.from_columns(m.columns(), 3) == m


def test_apply_matches_matmul():
    m = Gf2Matrix([[0, 1, 1], [1, 1, 0], [0, 0, 1]])
    for v in range(8):
        col = Gf2Matrix(np.array(mask_to_bits(v, 3)).reshape(3, 1))
        assert bits_to_mask((m @ col).array[:, 0].tolist()) == m.apply(v)


def test_addition_is_xor():
    a = Gf2Matrix([[1, 0], [1, 1]])
    assert (a + a) == Gf2Matrix.zeros(2, 2)


def test_singular_inverse_raises():
    with pytest.raises(ValueError, match="singular"):
        Gf2Matrix([[1, 1], [1, 1]]).inverse()


def test_rank_and_kernel():
    m = Gf2Matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])  # rows sum to zero mod 2
    assert m.rank() == 2
    assert m.kernel_dim() == 1
    assert not m.is_invertible()


def test_large_matmul_has_no_wraparound():
    ones = Gf2Matrix(np.ones((300, 300), dtype=np.uint8))
    # each entry is 300 = 0 mod 2
    assert (ones @ ones) == Gf2Matrix.zeros(300, 300)


def test_negative_power_is_inverse_power():
    m = Gf2Matrix([[0, 1], [1, 1]])
    assert m ** -1 @ m == Gf2Matrix.identity(2)
    assert m ** 3 == Gf2Matrix.identity(2)
    assert m ** -2 == m


def test_dot():
    assert dot(0b0011, 0b0010) == 1
    assert dot(0b0011, 0b0011) == 0


@settings(max_examples=200, deadline=None)
@given(matrices(5))
def test_inverse_when_invertible(m):
    if m.is_invertible():
        assert m @ m.inverse() == Gf2Matrix.identity(5)
        assert m.inverse() @ m == Gf2Matrix.identity(5)
    else:
        assert m.rank() < 5


@settings(max_examples=100, deadline=None)
@given(matrices(4), matrices(4))
def test_transpose_of_product(a, b):
    assert (a @ b).T == b.T @ a.T
