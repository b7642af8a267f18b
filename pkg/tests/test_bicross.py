import pytest

from hopfverify.bicross import (
    BETA_NOTE,
    BicrossStructure,
    CrossedProduct,
    bicross_suite,
    check_action_coproduct_compat,
    check_action_sign_coherence,
    check_comodule_coalgebra,
    check_module_algebra,
    reconstruct,
    reconstructed_presentation,
)
from hopfverify.models import build_bicross
from hopfverify.ncpoly import Element
from hopfverify.tensorspace import apply_on_leg, tensor

from _oracles import K3_PPLUS_BICROSS, power_family


@pytest.fixture(scope="module")
def s():
    return BicrossStructure(4)


def test_action_examples(s):
    A, K = s.A, s.K
    assert s.action(A.gen("P+"), K.gen("J3")).is_zero()
    assert s.action(A.gen("P-"), K.gen("E1")) == -A.gen("P1")
    got = s.action(A.gen("P+"), K.gen("K3"))
    want = power_family([-c for c in K3_PPLUS_BICROSS[:5]], "P+", shift=1)
    assert {w: list(c.coeffs) for w, c in got.series_terms().items()} == want


def test_action_is_a_derivation_for_primitive(s):
    A, K = s.A, s.K
    p1, p2, k3 = A.gen("P1"), A.gen("P2"), K.gen("K3")
    lhs = s.action(p1 * p2, k3)
    assert lhs == s.action(p1, k3) * p2 + p1 * s.action(p2, k3)


def test_action_of_unit_and_iterated(s):
    A, K = s.A, s.K
    assert s.action(A.one(), K.gen("F1")).is_zero()
    e1, e2 = K.gen("E1"), K.gen("E2")
    pm = A.gen("P-")
    assert s.action(s.action(pm, e1), e2) == s.action(pm, e1 * e2)


def test_action_rejects_foreign_operands(s):
    with pytest.raises(ValueError, match="outside"):
        s.action(s.K.gen("E1"), s.K.gen("E1"))


def test_action_images_stay_in_translations(s):
    for v in s.action_table.values():
        assert v.algebra is s.A
        assert all(s.A.lorentz_degree(w) == 0 for (w, _k) in v.terms)


def test_coaction_examples(s):
    A, K = s.A, s.K
    assert s.coaction(K.gen("E2")) == tensor(A.one(), K.gen("E2"))
    z = A.z()
    want = (
        tensor(A.exp(-z * A.gen("P+")), K.gen("F2"))
        - tensor(z * A.gen("P-"), K.gen("E2"))
        + tensor(z * A.gen("P1"), K.gen("J3"))
    )
    assert s.coaction(K.gen("F2")) == want
    counit = apply_on_leg(s.translations.counit_of, s.coaction(K.gen("K3")), 0)
    assert counit == K.gen("K3")


def test_coaction_of_products_is_not_tabulated(s):
    with pytest.raises(ValueError):
        s.coaction(s.K.gen("E1") * s.K.gen("F1"))


def test_compatibility_checks(s):
    ref = build_bicross(4)
    for r in (
        check_action_sign_coherence(s, ref),
        check_module_algebra(s, seed=3),
        check_comodule_coalgebra(s),
        check_action_coproduct_compat(s),
    ):
        assert r.passed, (r.check, [f.label for f in r.failures])


def test_reconstruction(s):
    r = reconstruct(s, build_bicross(4))
    assert r.passed, [f.label for f in r.failures]
    assert BETA_NOTE in r.notes


def test_reconstructed_presentation_matches(s):
    p, problems = reconstructed_presentation(s)
    ref = build_bicross(4)
    assert problems == []
    assert p.algebra.bracket_table().keys() == ref.algebra.bracket_table().keys()


def test_crossed_product_examples(s):
    cp = CrossedProduct(s)
    pm, e1 = cp.generator("P-"), cp.generator("E1")
    c = cp.commutator(e1, pm)
    target = build_bicross(4).algebra
    assert cp.single_sector(c, target) == target.gen("P1")
    assert cp.counit(cp.generator("F1")).is_zero()
    d = cp.coproduct(cp.generator("P+"))
    assert len(d) == 2


def test_crossed_product_f1_coproduct(s):
    cp = CrossedProduct(s)
    ref = build_bicross(4)
    got = cp.tensor_to_algebra(cp.coproduct(cp.generator("F1")), ref.algebra)
    assert got == ref.coproduct["F1"]


def test_suite_detects_sign_error():
    s = BicrossStructure(3)
    key = ("P-", "E1")
    v = s.action_table[key]
    bad = Element(s.A, {t: -c for t, c in v.terms.items()})
    s.action_table = dict(s.action_table)
    s.action_table[key] = bad
    s._act1[(s.A.index["P-"], s.K.index["E1"])] = bad.terms
    results = {r.check: r.passed for r in bicross_suite(s)}
    assert not results["action_sign_coherence"]
    assert not results["reconstruction"]
