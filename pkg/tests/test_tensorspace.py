import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfverify.models import NULL_PLANE, build_bicross
from hopfverify.tensorspace import (
    TensorElement,
    apply_on_leg,
    embed,
    flip,
    multiply_legs,
    tensor,
    tensor_exp,
    tensor_mul,
)


@pytest.fixture(scope="module")
def p():
    return build_bicross(4)


@pytest.fixture(scope="module")
def alg(p):
    return p.algebra


def ex(alg, c):
    return alg.exp(c * alg.z() * alg.gen("P+"))


def test_unit_and_independent_legs(p, alg):
    g = alg.gen
    one = TensorElement.one((alg, alg))
    t = p.coproduct["F1"]
    assert tensor_mul(one, t) == t == tensor_mul(t, one)
    lhs = tensor(ex(alg, -1), g("P-")) * tensor(g("P1"), alg.one())
    assert lhs == tensor(ex(alg, -1) * g("P1"), g("P-"))


def test_translation_coproducts_commute(p):
    a, b = p.coproduct["P-"], p.coproduct["P1"]
    assert (a * b - b * a).is_zero()


def test_arity_mismatch(alg):
    with pytest.raises(ValueError):
        TensorElement.one((alg, alg)) * TensorElement.one((alg, alg, alg))


def test_flip_examples(p, alg):
    x = alg.gen("K3")
    assert flip(tensor(x, alg.one())) == tensor(alg.one(), x)
    want = tensor(alg.gen("P-"), ex(alg, -1)) + tensor(alg.one(), alg.gen("P-"))
    assert flip(p.coproduct["P-"]) == want


def test_embed_examples(alg):
    x, y, one = alg.gen("E1"), alg.gen("P2"), alg.one()
    t = tensor(x, y)
    assert embed(t, "12") == tensor(x, y, one)
    assert embed(t, "13") == tensor(x, one, y)
    assert embed(t, "23") == tensor(one, x, y)
    for legs in ("12", "13", "23"):
        assert embed(TensorElement.one((alg, alg)), legs) == TensorElement.one((alg,) * 3)
    with pytest.raises(ValueError):
        embed(t, "21")


def test_antipode_on_leg_for_pminus(p, alg):
    d = p.coproduct["P-"]
    assert multiply_legs(apply_on_leg(p.antipode_of, d, 0)).is_zero()
    assert multiply_legs(apply_on_leg(p.antipode_of, d, 1)).is_zero()


def test_counit_on_leg(p, alg):
    r = apply_on_leg(p.counit_of, p.coproduct["P-"], 0)
    assert r == alg.gen("P-")


def test_coproduct_on_leg_of_primitive(p, alg):
    d = p.coproduct["P+"]
    one, x = alg.one(), alg.gen("P+")
    want = tensor(one, one, x) + tensor(one, x, one) + tensor(x, one, one)
    assert apply_on_leg(p.coproduct_of, d, 1) == want
    assert apply_on_leg(p.coproduct_of, d, 0) == want


def test_bad_leg_index(p):
    with pytest.raises(ValueError):
        apply_on_leg(p.counit_of, p.coproduct["P+"], 2)


@pytest.mark.parametrize("K", range(0, 7))
def test_group_likeness(K):
    q = build_bicross(K)
    a = q.algebra
    arg = -a.z() * a.gen("P+")
    d = tensor_exp(q.coproduct_of(arg))
    e = a.exp(arg)
    assert d == tensor(e, e)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(NULL_PLANE), min_size=1, max_size=3), st.lists(st.sampled_from(NULL_PLANE), min_size=1, max_size=3))
def test_flip_involution_and_embed_products(p, u, v):
    a = p.coproduct_of(_word(p.algebra, u))
    b = p.coproduct_of(_word(p.algebra, v))
    assert flip(flip(a)) == a
    for legs in ("12", "13", "23"):
        assert embed(a * b, legs) == embed(a, legs) * embed(b, legs)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(NULL_PLANE), min_size=1, max_size=3), st.lists(st.sampled_from(NULL_PLANE), min_size=1, max_size=3))
def test_legs_never_mix(p, u, v):
    a = tensor(_word(p.algebra, u), p.algebra.one())
    b = tensor(p.algebra.one(), _word(p.algebra, v))
    prod = a * b
    assert prod == tensor(_word(p.algebra, u), _word(p.algebra, v))
    assert prod == b * a


def _word(alg, names):
    out = alg.one()
    for n in names:
        out = out * alg.gen(n)
    return out
