"""Catalogue of named check suites and a small task runner.

A suite expands to a list of :class:`Task` records (picklable, so they can be
shipped to worker processes); :func:`run_task` rebuilds whatever it needs in
the worker and returns plain :class:`CheckResult` objects.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import hopfdef
from .hopfdef import CheckResult, Failure, HopfPresentation
from .kernel import RewriteFuelError

__all__ = [
    "BUILTIN",
    "SUITES",
    "Task",
    "ConfigError",
    "plan",
    "run_task",
    "execute",
    "load_presentation",
    "registry",
    "W2_DEFAULT_ORDER",
    "RMATRIX_DEFAULT_ORDER",
    "DEFAULT_ORDER",
]

BUILTIN = ("classical", "kinematical", "tilde", "bicross")
DEFAULT_ORDER = 6
RMATRIX_DEFAULT_ORDER = 4
W2_DEFAULT_ORDER = 3

PRESENTATION_CHECKS = (
    "jacobi",
    "coassociativity",
    "counit",
    "antipode",
    "coproduct_homomorphism",
    "extension_sample",
)

# suite -> (checks, algebras it applies to, default order); None = any presentation
SUITES: dict[str, tuple[tuple[str, ...], tuple[str, ...] | None, int]] = {
    "jacobi": (("jacobi",), None, DEFAULT_ORDER),
    "hopf": (PRESENTATION_CHECKS, None, DEFAULT_ORDER),
    "isomorphism": (("morphism_roundtrip", "hopf_isomorphism"), BUILTIN, DEFAULT_ORDER),
    "bicross": (
        (
            "action_sign_coherence",
            "module_algebra",
            "comodule_coalgebra",
            "action_coproduct_compat",
            "reconstruction",
        ),
        ("bicross",),
        DEFAULT_ORDER,
    ),
    "casimir": (("centrality[M2]", "centrality[W2]"), ("bicross",), DEFAULT_ORDER),
    "rmatrix": (("rmatrix_inverse", "intertwining", "triangularity"), ("bicross",), RMATRIX_DEFAULT_ORDER),
    "qybe": (("qybe",), ("bicross",), RMATRIX_DEFAULT_ORDER),
    "limits": (("classical_limits",), BUILTIN, DEFAULT_ORDER),
    "truncation": (("truncation",), BUILTIN, DEFAULT_ORDER),
}
SUITE_ORDER = ("jacobi", "hopf", "isomorphism", "bicross", "casimir", "rmatrix", "qybe", "limits", "truncation")


class ConfigError(ValueError):
    """Invalid run configuration (exit status 2)."""


@dataclass(frozen=True)
class Task:
    check: str
    algebra: str
    order: int
    seed: int = 0
    fuel: int | None = None

    @property
    def label(self) -> str:
        return f"{self.check} {self.algebra} K={self.order}"


# ---------------------------------------------------------------------------
# per-process caches
# ---------------------------------------------------------------------------

_REGISTRIES: dict = {}
_FILES: dict = {}
_BICROSS: dict = {}


def registry(order: int, fuel: int | None = None):
    from .models import ModelRegistry

    key = (order, fuel)
    reg = _REGISTRIES.get(key)
    if reg is None:
        reg = _REGISTRIES[key] = ModelRegistry(order, fuel)
    return reg


def _structure(order: int, fuel: int | None):
    from .bicross import BicrossStructure

    key = (order, fuel)
    s = _BICROSS.get(key)
    if s is None:
        s = _BICROSS[key] = BicrossStructure(order, fuel)
    return s


def load_presentation(algebra: str, order: int, fuel: int | None = None) -> HopfPresentation:
    if algebra in BUILTIN:
        return registry(order, fuel).presentation(algebra)
    if algebra.startswith("file:"):
        from .algfile import parse_document

        path = algebra[5:]
        key = (os.path.abspath(path), order, fuel)
        p = _FILES.get(key)
        if p is None:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise ConfigError(f"cannot read {path}: {e.strerror}") from None
            p = _FILES[key] = parse_document(text, order, fuel)
        return p
    raise ConfigError(f"unknown algebra {algebra!r}; use one of {', '.join(BUILTIN)} or file:PATH")


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------


def plan(
    suites: Iterable[str],
    algebra: str | None,
    order: int | None,
    seed: int = 0,
    fuel: int | None = None,
    w2_order: int | None = None,
) -> list[Task]:
    """Expand suite names into tasks.

    ``order=None`` means each suite's default.  The W² centrality check
    runs at ``w2_order`` (default: 3, or ``order`` when that is smaller).
    """
    names = list(suites)
    if "all" in names:
        names = list(SUITE_ORDER)
    if order is not None and order < 0:
        raise ConfigError("order must be non-negative")
    if w2_order is not None and w2_order < 0:
        raise ConfigError("--w2-order must be non-negative")
    if algebra is not None and algebra not in BUILTIN and not algebra.startswith("file:"):
        raise ConfigError(f"unknown algebra {algebra!r}; use one of {', '.join(BUILTIN)} or file:PATH")
    explicit_all = "all" in suites
    tasks: list[Task] = []
    for suite in names:
        if suite not in SUITES:
            raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_ORDER)} or all")
        checks, valid, default = SUITES[suite]
        K = default if order is None else order
        if valid is None:
            targets = [algebra] if algebra else list(BUILTIN)
        elif algebra is None:
            targets = [valid[0] if len(valid) == 1 else "all"]
        elif algebra in valid:
            targets = [valid[0] if len(valid) == 1 else "all"]
        elif explicit_all:
            continue
        else:
            raise ConfigError(f"suite {suite!r} does not apply to algebra {algebra!r}")
        for target in targets:
            for check in checks:
                if check == "centrality[W2]":
                    k2 = w2_order if w2_order is not None else min(W2_DEFAULT_ORDER, K)
                    tasks.append(Task(check, target, k2, seed, fuel))
                elif check == "truncation":
                    tasks.extend(Task(f"truncation[{k}]", target, K, seed, fuel) for k in range(K))
                else:
                    tasks.append(Task(check, target, K, seed, fuel))
    return tasks


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------


def _presentation_check(task: Task) -> CheckResult:
    p = load_presentation(task.algebra, task.order, task.fuel)
    if task.check == "extension_sample":
        return hopfdef.check_extension_sample(p, task.seed)
    return getattr(hopfdef, f"check_{task.check}")(p)


def _model_check(task: Task) -> CheckResult:
    from . import bicross as bx
    from . import models as m

    reg = registry(task.order, task.fuel)
    c = task.check
    if c == "morphism_roundtrip":
        return m.check_morphism_roundtrip(reg)
    if c == "hopf_isomorphism":
        return m.check_hopf_isomorphism(reg)
    if c == "centrality[M2]":
        return m.check_centrality(reg.mass_casimir, reg.bicross, "M2")
    if c == "centrality[W2]":
        return m.check_centrality(reg.pl_square, reg.bicross, "W2")
    if c in ("rmatrix_inverse", "intertwining", "triangularity", "qybe", "classical_limits"):
        return getattr(m, f"check_{c}")(reg)
    if c.startswith("truncation["):
        return m.check_truncation_coherence(reg, int(c[len("truncation[") : -1]))
    s = _structure(task.order, task.fuel)
    if c == "action_sign_coherence":
        return bx.check_action_sign_coherence(s, reg.bicross)
    if c == "module_algebra":
        return bx.check_module_algebra(s, task.seed)
    if c == "comodule_coalgebra":
        return bx.check_comodule_coalgebra(s)
    if c == "action_coproduct_compat":
        return bx.check_action_coproduct_compat(s)
    if c == "reconstruction":
        return bx.reconstruct(s, reg.bicross, task.seed)
    raise ConfigError(f"unknown check {c!r}")


def run_task(task: Task) -> CheckResult:
    try:
        if task.check in PRESENTATION_CHECKS:
            return _presentation_check(task)
        return _model_check(task)
    except RewriteFuelError as e:
        res = CheckResult(task.check, task.algebra, task.order, passed=False)
        res.failures.append(Failure("rewrite fuel exhausted", None))
        res.notes.append(str(e))
        return res


def execute(
    tasks: list[Task],
    jobs: int = 1,
    progress: Callable[[int, int, CheckResult], None] | None = None,
) -> list[CheckResult]:
    """Run tasks, returning results in task order."""
    results: list[CheckResult] = []
    total = len(tasks)
    if jobs <= 1 or total <= 1:
        for i, t in enumerate(tasks, 1):
            r = run_task(t)
            results.append(r)
            if progress:
                progress(i, total, r)
        return results
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for i, r in enumerate(pool.map(run_task, tasks), 1):
            results.append(r)
            if progress:
                progress(i, total, r)
    return results


def iter_checks() -> Iterator[tuple[str, str]]:
    for suite in SUITE_ORDER:
        for c in SUITES[suite][0]:
            yield suite, c
