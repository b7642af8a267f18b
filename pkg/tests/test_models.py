from fractions import Fraction as F

import pytest

from hopfverify.models import (
    ModelRegistry,
    _pull_tensor,
    check_centrality,
    check_classical_limits,
    check_hopf_isomorphism,
    check_intertwining,
    check_morphism_roundtrip,
    check_qybe,
    check_rmatrix_inverse,
    check_triangularity,
    check_truncation_coherence,
)
from hopfverify.ncpoly import classical_part
from hopfverify.tensorspace import TensorElement, flip, tensor

from _oracles import EXP_HALF, M2_PMINUS, M2_PSQ, WPLUS_J3, power_family


def lists(e):
    return {w: list(s.coeffs) for w, s in e.series_terms().items()}


def test_classical_brackets(reg3):
    a = reg3.classical.algebra
    assert a.bracket("E1", "F1") == a.gen("K3")
    assert a.bracket("K3", "J3").is_zero()
    assert reg3.classical.antipode["F2"] == -a.gen("F2")


def test_tilde_examples(reg6):
    t = reg6.tilde
    a = t.algebra
    g, zt = a.gen, a.z()
    em, ep = a.exp(-zt * g("P+~")), a.exp(zt * g("P+~"))
    assert t.coproduct["P-~"] == tensor(em, g("P-~")) + tensor(g("P-~"), ep)
    sinh = (ep - em) * F(1, 2)
    want = zt * zt * g("P-~") * reg6.tilde_pl_plus + zt * g("P-~") * g("J3~") * sinh
    assert a.bracket("F1~", "F2~") == want


def test_bicross_examples(reg6):
    b = reg6.bicross
    a = b.algebra
    g, z = a.gen, a.z()
    em = a.exp(-z * g("P+"))
    want = tensor(em, g("K3")) + tensor(g("K3"), a.one()) - tensor(z * g("P1"), g("E1")) - tensor(z * g("P2"), g("E2"))
    assert b.coproduct["K3"] == want
    assert a.bracket("F1", "F2").is_zero()


def test_kinematical_map(reg3):
    km = reg3.kinematical_map
    k = reg3.kinematical.algebra
    c = reg3.classical.algebra
    assert km(c.gen("P+")) == (k.gen("H") + k.gen("P3")) * F(1, 2)
    assert km(c.gen("F2")) == k.gen("K2") + k.gen("J1")
    for n in k.names:
        assert km(reg3.kinematical_inverse(k.gen(n))) == k.gen(n)


def test_morphism_checks(reg3):
    assert check_morphism_roundtrip(reg3).passed
    r = check_hopf_isomorphism(reg3)
    assert r.passed and r.notes == []


def test_isomorphism_pullback_example(reg6):
    b = reg6.bicross
    a = b.algebra
    img = reg6.basis_change(a.gen("P-"))
    d = _pull_tensor(reg6.inverse, reg6.tilde.coproduct_of(img))
    assert d == tensor(a.exp(-a.z() * a.gen("P+")), a.gen("P-")) + tensor(a.gen("P-"), a.one())


def test_mass_casimir_expansion(reg6):
    m2 = reg6.mass_casimir
    want = power_family(M2_PMINUS, "P+", shift=1, tail=("P-",))
    want.update(power_family(M2_PSQ, "P+", tail=("P1", "P1")))
    want.update(power_family(M2_PSQ, "P+", tail=("P2", "P2")))
    assert lists(m2) == want
    c = reg6.classical.algebra
    g = reg6.bicross.algebra.gen
    assert classical_part(m2) == 2 * g("P+") * g("P-") - g("P1") * g("P1") - g("P2") * g("P2")
    assert c.names == reg6.bicross.algebra.names


def test_pauli_lubanski_plus(reg6):
    wp = reg6.pl_components["W+"]
    want = power_family(WPLUS_J3, "P+", shift=1, tail=("J3",))
    want.update(power_family(EXP_HALF, "P+", tail=("P2", "E1")))
    want.update(power_family([-c for c in EXP_HALF], "P+", tail=("P1", "E2")))
    assert lists(wp) == want


def test_pauli_lubanski_classical_parts(reg3):
    g = reg3.bicross.algebra.gen
    w = reg3.pl_components
    assert classical_part(w["W+"]) == g("E1") * g("P2") - g("E2") * g("P1") + g("J3") * g("P+")
    for n in ("W13", "W23", "W-"):
        assert not classical_part(w[n]).is_zero()


def test_tilde_and_bicross_pl_vectors_correspond(reg6):
    assert reg6.inverse(reg6.tilde_pl_plus) == reg6.pl_components["W+"]
    assert reg6.basis_change(reg6.pl_components["W+"]) == reg6.tilde_pl_plus


def test_centrality(reg3):
    b = reg3.bicross
    assert check_centrality(reg3.mass_casimir, b, "M2").passed
    assert check_centrality(reg3.pl_square, b, "W2").passed
    assert not check_centrality(b.gen("P-"), b, "P-").passed


def test_rmatrix(reg3):
    R = reg3.rmatrix
    legs = R.legs
    assert R * reg3.rmatrix_inverse == TensorElement.one(legs)
    assert R.classical_part() == TensorElement.one(legs)
    a = reg3.bicross.algebra
    g = a.gen
    first = TensorElement(legs, {t: c for t, c in R.terms.items() if t[1] == 1})
    want = (
        tensor(g("E2"), g("P2")) + tensor(g("E1"), g("P1")) - tensor(g("P+"), g("K3"))
        + tensor(g("K3"), g("P+")) - tensor(g("P1"), g("E1")) - tensor(g("P2"), g("E2"))
    ).zshift(1)
    assert first == want
    assert flip(R) == reg3.rmatrix_inverse


def test_rmatrix_checks(reg3):
    for check in (check_rmatrix_inverse, check_intertwining, check_triangularity, check_qybe):
        assert check(reg3).passed, check.__name__


def test_intertwining_primitive_example(reg3):
    b = reg3.bicross
    d = b.coproduct["P+"]
    assert flip(d) == d
    assert reg3.rmatrix * d == d * reg3.rmatrix


def test_limits_and_truncation(reg3):
    assert check_classical_limits(reg3).passed
    for k in range(3):
        assert check_truncation_coherence(reg3, k).passed


def test_registry_presentation_lookup(reg3):
    assert reg3.presentation("tilde") is reg3.tilde
    with pytest.raises(KeyError):
        reg3.presentation("nope")
    assert set(reg3.named_elements()) == {"M2", "W2", "W13", "W23", "Wp", "Wm"}


def test_registry_is_per_order():
    assert ModelRegistry(1).bicross.order == 1
