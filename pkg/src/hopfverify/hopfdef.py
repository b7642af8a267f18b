"""Hopf presentations and the generic axiom checks run against them."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .ncpoly import Element, NCAlgebra
from .scalars import ONE, ZERO, ZSeries
from .tensorspace import TensorElement, apply_on_leg, multiply_legs, retarget

__all__ = [
    "HopfPresentation",
    "CheckResult",
    "Failure",
    "run_check",
    "check_jacobi",
    "check_coproduct_homomorphism",
    "check_coassociativity",
    "check_counit",
    "check_antipode",
    "check_extension_sample",
    "hopf_suite",
]


@dataclass
class Failure:
    label: str
    residual: Any = None


@dataclass
class CheckResult:
    """Outcome of one check: exact pass/fail plus witnesses."""

    check: str
    algebra: str
    order: int
    passed: bool
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        from .algfile import format_value

        return {
            "check": self.check,
            "algebra": self.algebra,
            "order": self.order,
            "passed": self.passed,
            "cases": self.cases,
            "failures": [
                {"label": f.label, "residual": format_value(f.residual)} for f in self.failures
            ],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.check:<32} {self.algebra:<12} K={self.order}"
            f"  cases={self.cases}  {self.seconds:.2f}s"
        )


class HopfPresentation:
    """Generators, brackets and Hopf structure maps given on generators.

    The structure maps are extended by the fixed rules: coproduct and counit
    multiplicatively, antipode anti-multiplicatively.
    """

    def __init__(
        self,
        name: str,
        algebra: NCAlgebra,
        coproduct: dict[str, TensorElement],
        counit: dict[str, ZSeries],
        antipode: dict[str, Element],
        antipode_variants: dict[str, dict[str, Element]] | None = None,
        elements: dict[str, Element] | None = None,
    ):
        self.name = name
        self.algebra = algebra
        for label, table in (("coproduct", coproduct), ("counit", counit), ("antipode", antipode)):
            missing = set(algebra.names) - set(table)
            if missing:
                raise ValueError(f"{name}: {label} undefined on {sorted(missing)}")
        self.coproduct = {
            n: retarget(t, (algebra, algebra)) for n, t in coproduct.items()
        }
        self.counit = {n: c.truncate(algebra.order) for n, c in counit.items()}
        self.antipode = {n: algebra.normal_order(a) for n, a in antipode.items()}
        self.antipode_variants = {
            label: {n: algebra.normal_order(a) for n, a in table.items()}
            for label, table in (antipode_variants or {}).items()
        }
        self.elements = {n: algebra.normal_order(a) for n, a in (elements or {}).items()}
        self._gen_cop = [self.coproduct[n].terms for n in algebra.names]
        self._gen_anti = [self.antipode[n].terms for n in algebra.names]
        self._cop_cache: dict = {(): {(((), ()), 0): ONE}}
        self._anti_cache: dict = {(): {((), 0): ONE}}

    @property
    def order(self) -> int:
        return self.algebra.order

    def gen(self, name: str) -> Element:
        return self.algebra.gen(name)

    # extensions ------------------------------------------------------
    def _word_coproduct(self, w: tuple) -> dict:
        r = self._cop_cache.get(w)
        if r is None:
            from .kernel import tensor_mul

            head = self._word_coproduct(w[:-1])
            rw = self.algebra.rewriter
            r = tensor_mul(head, self._gen_cop[w[-1]], (rw, rw), self.order)
            self._cop_cache[w] = r
        return r

    def coproduct_of(self, a: Element) -> TensorElement:
        K = self.order
        acc: dict = {}
        for (w, k), c in a.terms.items():
            for (ws, e), d in self._word_coproduct(w).items():
                if k + e <= K:
                    t = (ws, k + e)
                    acc[t] = acc.get(t, ZERO) + c * d
        return TensorElement((self.algebra, self.algebra), {t: c for t, c in acc.items() if c})

    def counit_of(self, a: Element) -> ZSeries:
        K = self.order
        total = ZSeries((), K)
        for (w, k), c in a.terms.items():
            s = ZSeries.monomial(c, k, K)
            for g in w:
                s = s * self.counit[self.algebra.names[g]]
                if s.is_zero():
                    break
            total = total + s
        return total

    def _word_antipode(self, w: tuple) -> dict:
        r = self._anti_cache.get(w)
        if r is None:
            tail = self._word_antipode(w[:-1])
            r = self.algebra.rewriter.mul_poly(self._gen_anti[w[-1]], tail)
            self._anti_cache[w] = r
        return r

    def antipode_of(self, a: Element) -> Element:
        K = self.order
        acc: dict = {}
        for (w, k), c in a.terms.items():
            for (v, e), d in self._word_antipode(w).items():
                if k + e <= K:
                    t = (v, k + e)
                    acc[t] = acc.get(t, ZERO) + c * d
        return Element(self.algebra, {t: c for t, c in acc.items() if c})

    def with_antipode(self, antipode: dict[str, Element], name: str | None = None) -> "HopfPresentation":
        return HopfPresentation(
            name or self.name, self.algebra, self.coproduct, self.counit, antipode
        )

    def __repr__(self):
        return f"<HopfPresentation {self.name} K={self.order}>"


def _commutator(a, b):
    return a * b - b * a


def run_check(name: str, algebra: str, order: int, body: Callable[[CheckResult], None]) -> CheckResult:
    res = CheckResult(name, algebra, order, passed=True)
    t0 = time.perf_counter()
    body(res)
    res.seconds = time.perf_counter() - t0
    res.passed = not res.failures
    return res


def check_jacobi(p: HopfPresentation) -> CheckResult:
    """All C(n,3) generator triples satisfy the Jacobi identity exactly."""

    def body(res: CheckResult):
        g = [p.gen(n) for n in p.algebra.names]
        names = p.algebra.names
        comm = {}
        for i, j in itertools.permutations(range(len(g)), 2):
            comm[i, j] = _commutator(g[i], g[j])
        for i, j, k in itertools.combinations(range(len(g)), 3):
            res.cases += 1
            r = (
                _commutator(comm[i, j], g[k])
                + _commutator(comm[j, k], g[i])
                + _commutator(comm[k, i], g[j])
            )
            if not r.is_zero():
                res.failures.append(Failure(f"({names[i]},{names[j]},{names[k]})", r))

    return run_check("jacobi", p.name, p.order, body)


def check_coproduct_homomorphism(p: HopfPresentation) -> CheckResult:
    """Δ([X,Y]) = [Δ(X), Δ(Y)] on every generator pair."""

    def body(res: CheckResult):
        names = p.algebra.names
        for x, y in itertools.combinations(names, 2):
            res.cases += 1
            lhs = p.coproduct_of(_commutator(p.gen(x), p.gen(y)))
            dx, dy = p.coproduct[x], p.coproduct[y]
            rhs = dx * dy - dy * dx
            r = lhs - rhs
            if not r.is_zero():
                res.failures.append(Failure(f"({x},{y})", r))

    return run_check("coproduct_homomorphism", p.name, p.order, body)


def check_coassociativity(p: HopfPresentation) -> CheckResult:
    def body(res: CheckResult):
        for x in p.algebra.names:
            res.cases += 1
            d = p.coproduct[x]
            left = apply_on_leg(p.coproduct_of, d, 0)
            right = apply_on_leg(p.coproduct_of, d, 1)
            r = left - right
            if not r.is_zero():
                res.failures.append(Failure(x, r))

    return run_check("coassociativity", p.name, p.order, body)


def check_counit(p: HopfPresentation) -> CheckResult:
    def body(res: CheckResult):
        for x in p.algebra.names:
            res.cases += 1
            d = p.coproduct[x]
            gx = p.gen(x)
            for side, leg in (("(ε⊗id)", 0), ("(id⊗ε)", 1)):
                r = apply_on_leg(p.counit_of, d, leg) - gx
                if not r.is_zero():
                    res.failures.append(Failure(f"{side}Δ({x})", r))

    return run_check("counit", p.name, p.order, body)


def _antipode_residuals(p: HopfPresentation) -> list[Failure]:
    out = []
    for x in p.algebra.names:
        d = p.coproduct[x]
        unit = p.algebra.scalar(p.counit[x])
        for side, leg in (("m(γ⊗id)", 0), ("m(id⊗γ)", 1)):
            r = multiply_legs(apply_on_leg(p.antipode_of, d, leg)) - unit
            if not r.is_zero():
                out.append(Failure(f"{side}Δ({x})", r))
    return out


def check_antipode(p: HopfPresentation) -> CheckResult:
    """m(γ⊗id)Δ = ε·1 = m(id⊗γ)Δ on generators.

    On failure, alternative antipode tables registered on the presentation
    are checked too and their verdicts recorded as notes (never substituted).
    """

    def body(res: CheckResult):
        res.cases = 2 * len(p.algebra.names)
        res.failures.extend(_antipode_residuals(p))
        if res.failures and p.antipode_variants:
            for label, table in p.antipode_variants.items():
                alt = p.with_antipode(table, f"{p.name}[{label}]")
                alt_fail = _antipode_residuals(alt)
                verdict = "passes" if not alt_fail else f"fails on {len(alt_fail)} cases"
                res.notes.append(f"antipode variant '{label}' {verdict}")

    return run_check("antipode", p.name, p.order, body)


def check_extension_sample(p: HopfPresentation, seed: int = 0, samples: int = 12) -> CheckResult:
    """Guards the (anti)homomorphic extension code on degree-2 products."""

    def body(res: CheckResult):
        rng = random.Random(seed)
        names = p.algebra.names
        pairs = [(x, y) for x in names for y in names]
        for x, y in rng.sample(pairs, min(samples, len(pairs))):
            res.cases += 1
            gx, gy = p.gen(x), p.gen(y)
            xy = gx * gy
            r = p.coproduct_of(xy) - p.coproduct[x] * p.coproduct[y]
            if not r.is_zero():
                res.failures.append(Failure(f"Δ({x}{y})", r))
            r2 = p.antipode_of(xy) - p.antipode[y] * p.antipode[x]
            if not r2.is_zero():
                res.failures.append(Failure(f"γ({x}{y})", r2))
            r3 = p.counit_of(xy) - p.counit[x] * p.counit[y]
            if not r3.is_zero():
                res.failures.append(Failure(f"ε({x}{y})", r3))

    return run_check("extension_sample", p.name, p.order, body)


def hopf_suite(p: HopfPresentation, seed: int = 0) -> list[CheckResult]:
    return [
        check_coassociativity(p),
        check_counit(p),
        check_antipode(p),
        check_coproduct_homomorphism(p),
        check_extension_sample(p, seed),
    ]
