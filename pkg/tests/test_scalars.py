from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfverify.scalars import (
    ONE,
    ZERO,
    Rational,
    ZSeries,
    as_rational,
    series_add,
    series_mul,
    series_scalar_exp,
)

from _oracles import EXP_MINUS

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


@st.composite
def series(draw, order=None):
    k = draw(st.integers(0, 8)) if order is None else order
    return ZSeries(draw(st.lists(rationals, min_size=0, max_size=k + 1)), k)


@st.composite
def series_triples(draw):
    k = draw(st.integers(0, 8))
    return tuple(draw(series(k)) for _ in range(3))


def test_rational_is_reduced():
    q = Rational(6, -4)
    assert q == F(-3, 2)
    assert q.denominator > 0
    assert as_rational("0") == ZERO and as_rational(1) == ONE


def test_add_examples():
    assert series_add(ZSeries([1, 1], 3), ZSeries([], 3)) == ZSeries([1, 1], 3)
    assert series_add(ZSeries([0, F(1, 2)]), ZSeries([0, F(1, 2)])) == ZSeries([0, 1])


def test_exponential_quotients_cancel():
    # (1 - e^{-z})/z + (e^{-z} - 1)/z
    e = series_scalar_exp(-1, 7)
    a = (ZSeries.constant(1, 7) - e).divide_by_z()
    b = (e - ZSeries.constant(1, 7)).divide_by_z()
    assert (a + b).is_zero()


def test_mul_examples():
    z = ZSeries.monomial(1, 1, 1)
    assert series_mul(z, z).is_zero()
    lhs = ZSeries([1, F(-1, 2)], 2) * ZSeries([1, F(1, 2)], 2)
    assert lhs == ZSeries([1, 0, F(-1, 4)], 2)


def test_scalar_exp_examples():
    assert series_scalar_exp(0, 5) == ZSeries.constant(1, 5)
    assert series_scalar_exp(1, 3) == ZSeries([1, 1, F(1, 2), F(1, 6)], 3)
    assert list(series_scalar_exp(-1, 6).coeffs) == EXP_MINUS
    assert series_scalar_exp(-1, 6) * series_scalar_exp(1, 6) == ZSeries.constant(1, 6)


def test_mixed_orders_truncate_to_minimum():
    s = ZSeries([1, 2, 3], 2) + ZSeries([1, 1, 1, 1, 1], 4)
    assert s.order == 2
    assert s == ZSeries([2, 3, 4], 2)


def test_divide_by_z_requires_vanishing_constant():
    with pytest.raises(ZeroDivisionError):
        ZSeries([1, 1], 3).divide_by_z()
    assert ZSeries([0, 1, 2], 2).divide_by_z() == ZSeries([1, 2], 1)


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        ZSeries([], -1)


def test_to_str():
    assert ZSeries([0, F(-1, 2), 3], 2).to_str("zt") in ("-1/2*zt + 3*zt^2", "-1/2 zt + 3 zt^2")


@given(series_triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == ZSeries([], a.order)


@given(series(), st.integers(0, 8))
def test_truncation_is_a_ring_map(a, k):
    b = a * a + a
    k = min(k, a.order)
    assert b.truncate(k) == a.truncate(k) * a.truncate(k) + a.truncate(k)


@settings(max_examples=50)
@given(rationals, rationals, st.integers(0, 8))
def test_exp_is_a_homomorphism(a, b, k):
    assert series_scalar_exp(a, k) * series_scalar_exp(b, k) == series_scalar_exp(a + b, k)


@given(series())
def test_values_are_hashable_and_immutable(a):
    assert hash(a) == hash(ZSeries(a.coeffs, a.order))
    with pytest.raises(AttributeError):
        a.order = 3
    with pytest.raises(AttributeError):
        a.extra = 1
