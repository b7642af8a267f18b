import pytest

from hopfverify.algfile import fixture_path
from hopfverify.suites import (
    SUITE_ORDER,
    ConfigError,
    Task,
    execute,
    iter_checks,
    load_presentation,
    plan,
    run_task,
)


def test_plan_expands_presentation_suites_over_builtins():
    tasks = plan(["jacobi"], None, 2)
    assert [t.algebra for t in tasks] == ["classical", "kinematical", "tilde", "bicross"]
    assert {t.order for t in tasks} == {2}


def test_plan_defaults():
    by_check = {t.check: t for t in plan(["rmatrix", "casimir", "hopf"], "bicross", None)}
    assert by_check["rmatrix_inverse"].order == 4
    assert by_check["centrality[M2]"].order == 6
    assert by_check["centrality[W2]"].order == 3
    assert by_check["jacobi"].order == 6


def test_w2_order_follows_smaller_order_and_override():
    tasks = {t.check: t.order for t in plan(["casimir"], None, 2)}
    assert tasks["centrality[W2]"] == 2
    tasks = {t.check: t.order for t in plan(["casimir"], None, 5, w2_order=4)}
    assert tasks == {"centrality[M2]": 5, "centrality[W2]": 4}


def test_truncation_expands_per_level():
    checks = [t.check for t in plan(["truncation"], None, 3)]
    assert checks == ["truncation[0]", "truncation[1]", "truncation[2]"]


def test_all_skips_suites_that_do_not_apply():
    tasks = plan(["all"], "tilde", 1)
    assert {t.check for t in tasks} >= {"jacobi", "morphism_roundtrip", "classical_limits"}
    assert not any(t.check == "qybe" for t in tasks)
    assert {s for s, _ in iter_checks()} == set(SUITE_ORDER)


@pytest.mark.parametrize(
    "args, kwargs, fragment",
    [
        (["nope"], {}, "unknown suite"),
        (["qybe"], {"algebra": "tilde"}, "does not apply"),
        (["jacobi"], {"algebra": "sl2"}, "unknown algebra"),
        (["jacobi"], {"order": -1}, "non-negative"),
        (["casimir"], {"w2_order": -2}, "non-negative"),
    ],
)
def test_plan_config_errors(args, kwargs, fragment):
    call = {"algebra": None, "order": 2, **kwargs}
    with pytest.raises(ConfigError, match=fragment):
        plan(args, call["algebra"], call["order"], w2_order=call.get("w2_order"))


def test_missing_file_is_a_config_error():
    with pytest.raises(ConfigError, match="cannot read"):
        load_presentation("file:/nonexistent/x.alg", 1)


def test_file_presentations_are_cached():
    src = f"file:{fixture_path('bicross')}"
    assert load_presentation(src, 1) is load_presentation(src, 1)
    assert load_presentation(src, 1).order == 1


def test_execute_preserves_order_with_jobs():
    tasks = plan(["jacobi", "limits"], None, 1)
    seen = []
    serial = execute(tasks, progress=lambda i, n, r: seen.append((i, n)))
    parallel = execute(tasks, jobs=2)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]
    assert seen[-1] == (len(tasks), len(tasks))
    assert all(r.passed for r in serial)


def test_fuel_exhaustion_becomes_a_failed_result():
    r = run_task(Task("coproduct_homomorphism", "bicross", 2, fuel=1))
    assert not r.passed
    assert r.failures[0].label == "rewrite fuel exhausted"


def test_unknown_check_name():
    with pytest.raises(ConfigError):
        run_task(Task("bogus", "bicross", 1))
