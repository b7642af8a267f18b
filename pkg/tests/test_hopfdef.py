import json

import pytest

from hopfverify.algfile import load_fixture
from hopfverify.hopfdef import (
    CheckResult,
    HopfPresentation,
    check_antipode,
    check_coassociativity,
    check_coproduct_homomorphism,
    check_counit,
    check_extension_sample,
    check_jacobi,
    hopf_suite,
)
from hopfverify.models import build_bicross, build_classical, build_kinematical, build_tilde
from hopfverify.ncpoly import NCAlgebra
from hopfverify.scalars import ZSeries
from hopfverify.tensorspace import tensor

# Jacobi triples that fail when the sign of [K3, P+] is flipped, found by
# running the check on the mutated table.
BROKEN_TRIPLES = [
    "(P+,E1,F1)",
    "(P+,E2,F2)",
    "(P+,K3,F1)",
    "(P+,K3,F2)",
    "(P1,E1,K3)",
    "(P1,K3,F1)",
    "(P2,E2,K3)",
    "(P2,K3,F2)",
]


@pytest.fixture(scope="module")
def bic4():
    return build_bicross(4)


@pytest.fixture(scope="module")
def til4():
    return build_tilde(4)


@pytest.mark.parametrize("build", [build_classical, build_kinematical, build_tilde, build_bicross])
def test_jacobi_passes(build):
    r = check_jacobi(build(4))
    assert r.passed and r.cases == 120


def test_jacobi_catches_flipped_sign():
    p = load_fixture("broken", 3)
    r = check_jacobi(p)
    assert not r.passed
    assert [f.label for f in r.failures] == BROKEN_TRIPLES
    assert all(f.residual is not None and not f.residual.is_zero() for f in r.failures)


def test_abelian_presentation():
    gens = [("A", 0), ("B", 1)]
    alg = NCAlgebra(gens, {}, 2)
    one = alg.one()
    cop = {n: tensor(alg.gen(n), one) + tensor(one, alg.gen(n)) for n in "AB"}
    p = HopfPresentation("abelian", alg, cop, {n: ZSeries((), 2) for n in "AB"}, {n: -alg.gen(n) for n in "AB"})
    assert check_jacobi(p).passed
    assert all(r.passed for r in hopf_suite(p))


def test_missing_structure_is_rejected():
    gens = [("A", 0)]
    alg = NCAlgebra(gens, {}, 1)
    with pytest.raises(ValueError, match="coproduct undefined"):
        HopfPresentation("bad", alg, {}, {"A": ZSeries((), 1)}, {"A": alg.gen("A")})


@pytest.mark.parametrize("name", ["classical", "kinematical", "tilde", "bicross"])
def test_hopf_suite_passes(name):
    build = {"classical": build_classical, "kinematical": build_kinematical,
             "tilde": build_tilde, "bicross": build_bicross}[name]
    p = build(3)
    for r in hopf_suite(p):
        assert r.passed, (r.check, [f.label for f in r.failures])


def test_coproduct_homomorphism_pairs(bic4):
    r = check_coproduct_homomorphism(bic4)
    assert r.passed and r.cases == 45
    dk = bic4.coproduct_of(bic4.gen("E1") * bic4.gen("F1") - bic4.gen("F1") * bic4.gen("E1"))
    de, df = bic4.coproduct["E1"], bic4.coproduct["F1"]
    assert dk == de * df - df * de
    assert bic4.coproduct_of(bic4.algebra.bracket("P+", "P-")).is_zero()


def test_tilde_hardest_pair(til4):
    a = til4.algebra
    lhs = til4.coproduct_of(a.bracket("K3~", "F1~"))
    dk, df = til4.coproduct["K3~"], til4.coproduct["F1~"]
    assert lhs == dk * df - df * dk


def test_coassociativity_and_counit(bic4, til4):
    for p in (bic4, til4):
        assert check_coassociativity(p).passed
        assert check_counit(p).passed
    r = bic4.counit_of(bic4.algebra.exp(-bic4.algebra.z() * bic4.gen("P+")))
    assert r == ZSeries.constant(1, 4)


def test_bicross_antipode(bic4):
    assert check_antipode(bic4).passed
    a = bic4.algebra
    g, z = a.gen, a.z()
    e = a.exp(z * g("P+"))
    want = -e * (g("K3") + z * g("P1") * g("E1") + z * g("P2") * g("E2"))
    assert bic4.antipode["K3"] == want


def test_tilde_antipode_exponent_three(til4):
    r = check_antipode(til4)
    assert r.passed
    assert r.notes == []


@pytest.mark.parametrize("exponent", [1, 2, 4])
def test_other_tilde_antipode_exponents_fail(exponent):
    r = check_antipode(build_tilde(3, antipode_exponent=exponent))
    assert not r.passed
    failing = {f.label.split("Δ(")[1].rstrip(")") for f in r.failures}
    assert failing == {"K3~", "F1~", "F2~"}


def test_failing_antipode_reports_exponent_one_variant():
    r = check_antipode(build_tilde(3, antipode_exponent=2))
    assert any(n.startswith("antipode variant 'exponent 1' fails") for n in r.notes)


def test_extension_sample_is_seeded(bic4):
    a = check_extension_sample(bic4, seed=7)
    b = check_extension_sample(bic4, seed=7)
    assert a.passed and a.cases == b.cases == 12


def test_report_structure(bic4):
    r = check_jacobi(load_fixture("broken", 2))
    d = r.to_dict()
    assert set(d) == {"check", "algebra", "order", "passed", "cases", "failures", "notes"}
    assert d["passed"] is False and d["failures"][0]["label"] == BROKEN_TRIPLES[0]
    json.dumps(d)
    assert r.summary().startswith("FAIL")
    assert isinstance(r, CheckResult)


@pytest.mark.parametrize("K", range(0, 4))
def test_order_coherence(K):
    p = build_tilde(K)
    assert check_jacobi(p).passed
    assert all(r.passed for r in hopf_suite(p))
