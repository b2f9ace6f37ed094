from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvp.cyclotomic import CycNum, cyclotomic_coeffs, multiplicative_order


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12])
def test_root_relations(n):
    z = CycNum.zeta(n)
    assert z**n == 1
    phi = cyclotomic_coeffs(n)
    value = sum((z**i * c for i, c in enumerate(phi)), CycNum(n))
    assert not value
    assert multiplicative_order(z) == n


def test_known_values():
    assert CycNum.zeta(4) ** 2 == -1
    assert CycNum.zeta(6) ** 3 == -1
    assert CycNum.zeta(3) ** 2 == -CycNum.zeta(3) - 1
    assert cyclotomic_coeffs(6) == (1, -1, 1)


def test_mixing_fields_rejected():
    with pytest.raises(ValueError):
        CycNum.zeta(3) + CycNum.zeta(4)


ints = st.lists(st.integers(-4, 4), max_size=7)


@given(ints, ints, ints)
def test_ring_axioms(a, b, c):
    x, y, w = CycNum(6, a), CycNum(6, b), CycNum(6, c)
    assert (x + y) * w == x * w + y * w
    assert (x * y) * w == x * (y * w)
    assert x * y == y * x
    assert x - x == 0


def test_scalar_and_str():
    assert CycNum.scalar(5, Fraction(1, 2)) * 2 == 1
    assert str(CycNum(4, [Fraction(-1, 4), 0, 1])) == "-5/4"
    assert str(CycNum(3, [1, 2])) == "2*z + 1"
