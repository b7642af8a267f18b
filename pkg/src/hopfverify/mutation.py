"""Mutation sweep: corrupt one structure-table term at a time and make sure
some check notices.

Every term of every table entry is mutated twice (negated, then doubled).
Counits of generators are all zero, so their only mutation is ``0 -> 1``.
Bracket entries are mutated as a pair, keeping ``[Y,X] = -[X,Y]``, so a
mutant is never caught merely by a broken antisymmetry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import hopfdef
from .hopfdef import CheckResult, HopfPresentation
from .kernel import RewriteFuelError
from .ncpoly import Element, NCAlgebra
from .scalars import ONE, ZSeries
from .tensorspace import TensorElement

__all__ = ["Mutant", "Outcome", "presentation_mutants", "bicross_mutants", "sweep"]

KINDS = ("negate", "double")


@dataclass(frozen=True)
class Mutant:
    """One corrupted term: ``table[entry]`` at monomial ``term``."""

    target: str
    table: str
    entry: str
    term: str
    kind: str
    apply: Callable = field(compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.target}.{self.table}[{self.entry}] {self.kind} {self.term}"


@dataclass
class Outcome:
    mutant: Mutant
    caught_by: list[str]

    @property
    def caught(self) -> bool:
        return bool(self.caught_by)


def _scaled(terms: dict, key, kind: str) -> dict:
    out = dict(terms)
    out[key] = -out[key] if kind == "negate" else 2 * out[key]
    return out


def _word_str(alg, w) -> str:
    return "*".join(alg.names[i] for i in w) or "1"


def _term_str(alg, key) -> str:
    w, k = key
    if isinstance(w[0] if w else None, tuple):
        body = " (x) ".join(_word_str(alg, v) for v in w)
    else:
        body = _word_str(alg, w)
    return f"z^{k} {body}" if k else body


# ---------------------------------------------------------------------------
# presentation tables
# ---------------------------------------------------------------------------


def _rebuild(p: HopfPresentation, brackets=None, coproduct=None, counit=None, antipode=None):
    alg = p.algebra
    if brackets is not None:
        alg = NCAlgebra(
            [(g.name, g.lorentz_degree) for g in alg.generators],
            brackets, alg.order, alg.param, alg.label, alg.fuel,
        )
    return HopfPresentation(
        p.name, alg,
        coproduct if coproduct is not None else p.coproduct,
        counit if counit is not None else p.counit,
        antipode if antipode is not None else p.antipode,
    )


def presentation_mutants(p: HopfPresentation) -> Iterator[Mutant]:
    alg = p.algebra
    table = alg.bracket_table()
    for (x, y), rhs in table.items():
        for key in rhs.terms:
            for kind in KINDS:
                def apply(p=p, x=x, y=y, key=key, kind=kind, table=table):
                    new = dict(table)
                    new[(x, y)] = Element(p.algebra, _scaled(table[(x, y)].terms, key, kind))
                    return _rebuild(p, brackets=new)

                yield Mutant(p.name, "brackets", f"{x},{y}", _term_str(alg, key), kind, apply)
    for n, t in p.coproduct.items():
        for key in t.terms:
            for kind in KINDS:
                def apply(p=p, n=n, t=t, key=key, kind=kind):
                    cop = dict(p.coproduct)
                    cop[n] = TensorElement(t.legs, _scaled(p.coproduct[n].terms, key, kind))
                    return _rebuild(p, coproduct=cop)

                yield Mutant(p.name, "coproduct", n, _term_str(alg, key), kind, apply)
    for n, a in p.antipode.items():
        for key in a.terms:
            for kind in KINDS:
                def apply(p=p, n=n, key=key, kind=kind):
                    anti = dict(p.antipode)
                    anti[n] = Element(p.algebra, _scaled(p.antipode[n].terms, key, kind))
                    return _rebuild(p, antipode=anti)

                yield Mutant(p.name, "antipode", n, _term_str(alg, key), kind, apply)
    for n, c in p.counit.items():
        def apply(p=p, n=n):
            eps = dict(p.counit)
            eps[n] = p.counit[n] + ZSeries.constant(ONE, p.order)
            return _rebuild(p, counit=eps)

        yield Mutant(p.name, "counit", n, "1", "shift", apply)


# ---------------------------------------------------------------------------
# bicrossproduct action and coaction tables
# ---------------------------------------------------------------------------


def _patched_structure(order, fuel, action=None, coaction=None):
    from .bicross import BicrossStructure

    s = BicrossStructure(order, fuel)
    if action is not None:
        (x, h), v = action
        v = Element(s.A, v.terms)
        s.action_table = dict(s.action_table)
        s.action_table[(x, h)] = v
        s._act1[(s.A.index[x], s.K.index[h])] = v.terms
    if coaction is not None:
        n, t = coaction
        t = TensorElement((s.A, s.K), t.terms)
        s.coaction_table = dict(s.coaction_table)
        s.coaction_table[n] = t
    return s


def bicross_mutants(order: int, fuel: int | None = None) -> Iterator[Mutant]:
    from .bicross import BicrossStructure

    base = BicrossStructure(order, fuel)
    for (x, h), v in base.action_table.items():
        for key in v.terms:
            for kind in KINDS:
                def apply(x=x, h=h, v=v, key=key, kind=kind):
                    new = Element(v.algebra, _scaled(v.terms, key, kind))
                    return _patched_structure(order, fuel, action=((x, h), new))

                yield Mutant("bicross", "action", f"{x}<{h}", _term_str(base.A, key), kind, apply)
    for n, t in base.coaction_table.items():
        for key in t.terms:
            for kind in KINDS:
                def apply(n=n, t=t, key=key, kind=kind):
                    new = TensorElement(t.legs, _scaled(t.terms, key, kind))
                    return _patched_structure(order, fuel, coaction=(n, new))

                w, k = key
                term = f"{_word_str(base.A, w[0])} (x) {_word_str(base.K, w[1])}"
                yield Mutant("bicross", "coaction", n, f"z^{k} {term}" if k else term, kind, apply)


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def _registry_with(base, name: str, mutant: HopfPresentation):
    from .models import ModelRegistry

    reg = ModelRegistry(base.order, base.fuel)
    for other in ("classical", "kinematical", "tilde", "bicross"):
        reg.__dict__[other] = mutant if other == name else base.presentation(other)
    return reg


def _presentation_checks(base, name: str, q: HopfPresentation, seed: int):
    from . import models as m

    yield lambda: hopfdef.check_jacobi(q)
    yield lambda: hopfdef.check_counit(q)
    yield lambda: hopfdef.check_coassociativity(q)
    yield lambda: hopfdef.check_antipode(q)
    yield lambda: hopfdef.check_coproduct_homomorphism(q)
    yield lambda: hopfdef.check_extension_sample(q, seed)
    yield lambda: m.check_morphism_roundtrip(_registry_with(base, name, q))
    if name in ("tilde", "bicross"):
        yield lambda: m.check_hopf_isomorphism(_registry_with(base, name, q))
    yield lambda: m.check_classical_limits(_registry_with(base, name, q))


def _structure_checks(base, s, seed: int):
    from . import bicross as bx

    ref = base.bicross
    yield lambda: bx.check_action_sign_coherence(s, ref)
    yield lambda: bx.check_module_algebra(s, seed)
    yield lambda: bx.check_comodule_coalgebra(s)
    yield lambda: bx.check_action_coproduct_compat(s)
    yield lambda: bx.reconstruct(s, ref, seed)


def _judge(checks, exhaustive: bool) -> list[str]:
    caught: list[str] = []
    for thunk in checks:
        try:
            r: CheckResult = thunk()
        except RewriteFuelError:
            caught.append("rewrite fuel exhausted")
            if not exhaustive:
                break
            continue
        if not r.passed:
            caught.append(r.check)
            if not exhaustive:
                break
    return caught


def sweep(
    order: int = 2,
    targets=("classical", "kinematical", "tilde", "bicross"),
    include_bicross_tables: bool = True,
    seed: int = 0,
    fuel: int | None = None,
    exhaustive: bool = False,
    progress: Callable[[Outcome], None] | None = None,
) -> list[Outcome]:
    """Run every mutant; by default stop checking a mutant at its first failure."""
    from .models import ModelRegistry

    base = ModelRegistry(order, fuel)
    out: list[Outcome] = []

    def record(mu, caught):
        o = Outcome(mu, caught)
        out.append(o)
        if progress:
            progress(o)

    for name in targets:
        for mu in presentation_mutants(base.presentation(name)):
            try:
                q = mu.apply()
            except RewriteFuelError:
                record(mu, ["rewrite fuel exhausted"])
                continue
            record(mu, _judge(_presentation_checks(base, name, q, seed), exhaustive))
    if include_bicross_tables:
        for mu in bicross_mutants(order, fuel):
            record(mu, _judge(_structure_checks(base, mu.apply(), seed), exhaustive))
    return out
