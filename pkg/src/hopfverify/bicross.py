"""The right action of the Lorentz algebra on the deformed translations, the
left coaction back, and a constructive crossed-product reconstruction.

``A`` is the commutative translation Hopf algebra (P+, P1, P2, P-) with its
deformed coproduct, ``K`` the undeformed Lorentz algebra with primitive
coproduct.  Elements of the crossed product ``K ⊗ A`` are dicts
``{(kword, aword, zpow): coef}`` and stand for the product ``h a``.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterable

from .hopfdef import CheckResult, Failure, HopfPresentation, check_jacobi, hopf_suite, run_check
from .models import (
    LORENTZ,
    NULL_PLANE,
    TRANSLATIONS,
    _alphabet,
    _eps,
    _Formulas,
    _primitive_structure,
    build_bicross,
    classical_brackets,
)
from .ncpoly import Algebra, Element, FreeAlgebra, NCAlgebra
from .scalars import ONE, ZERO, ZSeries
from .tensorspace import TensorElement, apply_on_leg, tensor

__all__ = [
    "BicrossStructure",
    "CrossedProduct",
    "CrossedElement",
    "build_lorentz",
    "build_translations",
    "action_table",
    "coaction_table",
    "transfer",
    "check_action_sign_coherence",
    "check_module_algebra",
    "check_comodule_coalgebra",
    "check_action_coproduct_compat",
    "reconstruct",
    "bicross_suite",
]

BETA_NOTE = (
    "the coaction of products is not compared against an abstract formula; "
    "it is exercised through the coproduct homomorphism check of the reconstruction"
)


def transfer(x: Element, target: Algebra) -> Element:
    """Re-express ``x`` in ``target`` by generator name (normal-ordering there)."""
    if x.algebra is target:
        return x
    src = x.algebra.names
    idx = target.index
    K = target.order
    acc: dict = {}
    for (w, k), c in x.terms.items():
        if k > K:
            continue
        try:
            mapped = tuple(idx[src[g]] for g in w)
        except KeyError as e:
            raise ValueError(f"operand outside {target.label or 'target'} algebra: {e.args[0]}") from None
        for v, e, d in target.rewriter.mono_mul((), mapped):
            if k + e <= K:
                acc[(v, k + e)] = acc.get((v, k + e), ZERO) + c * d
    return Element(target, {t: c for t, c in acc.items() if c})


def _transfer_tensor(t: TensorElement, legs: tuple) -> TensorElement:
    acc: dict = {}
    K = min(a.order for a in legs)
    for (ws, k), c in t.terms.items():
        partial = {((), k): c}
        for src, dst, w in zip(t.legs, legs, ws):
            img = transfer(Element(src, {(w, 0): ONE}), dst)
            nxt: dict = {}
            for (us, kk), d in partial.items():
                for (v, e), f in img.terms.items():
                    if kk + e <= K:
                        key = (us + (v,), kk + e)
                        nxt[key] = nxt.get(key, ZERO) + d * f
            partial = nxt
        for key, d in partial.items():
            acc[key] = acc.get(key, ZERO) + d
    return TensorElement(legs, {t: c for t, c in acc.items() if c})


# ---------------------------------------------------------------------------
# the two Hopf factors and the tables
# ---------------------------------------------------------------------------


def build_lorentz(order: int = 6, fuel: int | None = None) -> HopfPresentation:
    """Undeformed Lorentz algebra with primitive coproduct."""
    f = _Formulas(NULL_PLANE, order, "z")
    br = {
        (x, y): v
        for (x, y), v in classical_brackets(f).items()
        if x in LORENTZ and y in LORENTZ and not v.is_zero()
    }
    F = FreeAlgebra(_alphabet(LORENTZ, LORENTZ), order + 2, "z")
    br = {k: transfer(v, F) for k, v in br.items()}
    alg = NCAlgebra(_alphabet(LORENTZ, LORENTZ), br, order, "z", "lorentz", **({"fuel": fuel} if fuel else {}))
    cop, counit, anti = _primitive_structure(alg)
    return HopfPresentation("lorentz", alg, cop, counit, anti)


def build_translations(order: int = 6) -> HopfPresentation:
    """Commutative deformed translation Hopf algebra."""
    alg = NCAlgebra(_alphabet(TRANSLATIONS, LORENTZ), {}, order, "z", "translations")
    f = _Formulas(NULL_PLANE, order, "z")
    g = alg.gens()
    one = alg.one()
    e = transfer(f.exp_pp(-1), alg)
    einv = transfer(f.exp_pp(1), alg)
    cop = {"P+": tensor(g["P+"], one) + tensor(one, g["P+"])}
    anti = {"P+": -g["P+"]}
    for n in ("P-", "P1", "P2"):
        cop[n] = tensor(e, g[n]) + tensor(g[n], one)
        anti[n] = -(einv * g[n])
    counit = {n: ZSeries((), order) for n in alg.names}
    return HopfPresentation("translations", alg, cop, counit, anti)


def action_table(A: Algebra) -> dict[tuple[str, str], Element]:
    """Right action of Lorentz generators on translation generators."""
    f = _Formulas(NULL_PLANE, A.order, A.param)
    z, one = f.z, f.one
    e = f.exp_pp(-1)
    q = (e - one).div_z()
    sq = f["P1"] * f["P1"] + f["P2"] * f["P2"]
    t = {
        ("P+", "K3"): q,
        ("P-", "K3"): f["P-"] + z / 2 * sq,
        ("P+", "J3"): f.F.zero(),
        ("P-", "J3"): f.F.zero(),
    }
    for i in (1, 2):
        j = 3 - i
        Pi = f[f"P{i}"]
        t[(f"P{i}", "K3")] = (one - e) * Pi
        t[(f"P{i}", "J3")] = _eps(i, j) * f[f"P{j}"]
        t[("P-", f"E{i}")] = -Pi
        t[("P+", f"E{i}")] = f.F.zero()
        t[("P+", f"F{i}")] = -Pi
        t[("P-", f"F{i}")] = z * Pi * f["P-"]
        for jj in (1, 2):
            Pj = f[f"P{jj}"]
            t[(f"P{i}", f"E{jj}")] = q if i == jj else f.F.zero()
            rhs = z * Pi * Pj
            if i == jj:
                rhs = rhs - (e * f["P-"] + z / 2 * sq)
            t[(f"P{i}", f"F{jj}")] = rhs
    return {k: transfer(v, A) for k, v in t.items()}


def coaction_table(A: Algebra, K: Algebra) -> dict[str, TensorElement]:
    """Left coaction of A on the Lorentz generators (legs A, K)."""
    f = _Formulas(NULL_PLANE, A.order, A.param)
    a = A.gens()
    k = K.gens()
    z = A.z()
    e = transfer(f.exp_pp(-1), A)
    one = A.one()
    b = {n: tensor(one, k[n]) for n in ("J3", "E1", "E2")}
    b["F1"] = tensor(e, k["F1"]) - tensor(z * a["P-"], k["E1"]) - tensor(z * a["P2"], k["J3"])
    b["F2"] = tensor(e, k["F2"]) - tensor(z * a["P-"], k["E2"]) + tensor(z * a["P1"], k["J3"])
    b["K3"] = tensor(e, k["K3"]) - tensor(z * a["P1"], k["E1"]) - tensor(z * a["P2"], k["E2"])
    return b


class BicrossStructure:
    """The matched pair (K, A) with action and coaction tables."""

    def __init__(self, order: int = 6, fuel: int | None = None):
        self.order = order
        self.lorentz = build_lorentz(order, fuel)
        self.translations = build_translations(order)
        self.K = self.lorentz.algebra
        self.A = self.translations.algebra
        self.fuel = fuel
        tab = action_table(self.A)
        self.action_table = tab
        self._act1 = {
            (self.A.index[x], self.K.index[h]): v.terms for (x, h), v in tab.items()
        }
        self.coaction_table = coaction_table(self.A, self.K)
        self._act_memo: dict = {}
        self._act_word_memo: dict = {}

    # action ----------------------------------------------------------
    def _act_gen(self, aw: tuple, g: int) -> dict:
        """``aw ◁ g`` for a translation monomial, as a derivation."""
        key = (aw, g)
        r = self._act_memo.get(key)
        if r is not None:
            return r
        rw = self.A.rewriter
        acc: dict = {}
        for i, x in enumerate(aw):
            rest = aw[:i] + aw[i + 1 :]
            for (v, k), c in self._act1[(x, g)].items():
                for u, e, d in rw.mono_mul(v, rest):
                    if k + e <= self.order:
                        t = (u, k + e)
                        acc[t] = acc.get(t, ZERO) + c * d
        r = {t: c for t, c in acc.items() if c}
        self._act_memo[key] = r
        return r

    def act_word(self, aw: tuple, hw: tuple) -> dict:
        """``aw ◁ hw`` for monomials; the right action of a word is iterated."""
        key = (aw, hw)
        r = self._act_word_memo.get(key)
        if r is not None:
            return r
        if not hw:
            r = {(aw, 0): ONE}
        else:
            acc: dict = {}
            for (v, k), c in self.act_word(aw, hw[:-1]).items():
                for (u, e), d in self._act_gen(v, hw[-1]).items():
                    if k + e <= self.order:
                        t = (u, k + e)
                        acc[t] = acc.get(t, ZERO) + c * d
            r = {t: c for t, c in acc.items() if c}
        self._act_word_memo[key] = r
        return r

    def action(self, a: Element, h: Element) -> Element:
        """``a ◁ h`` for ``a`` in the translations and ``h`` in the Lorentz algebra."""
        a = transfer(a, self.A)
        h = transfer(h, self.K)
        acc: dict = {}
        for (aw, k1), c1 in a.terms.items():
            for (hw, k2), c2 in h.terms.items():
                if k1 + k2 > self.order:
                    continue
                for (u, e), d in self.act_word(aw, hw).items():
                    k = k1 + k2 + e
                    if k <= self.order:
                        acc[(u, k)] = acc.get((u, k), ZERO) + c1 * c2 * d
        return Element(self.A, {t: c for t, c in acc.items() if c})

    # coaction ----------------------------------------------------------
    def coaction(self, h: Element) -> TensorElement:
        """Coaction on Lorentz elements of degree at most one."""
        h = transfer(h, self.K)
        legs = (self.A, self.K)
        acc = TensorElement.zero(legs)
        for (w, k), c in h.terms.items():
            if len(w) > 1:
                raise ValueError(
                    "coaction is tabulated on generators only; products go through the reconstruction"
                )
            if not w:
                img = TensorElement.one(legs)
            else:
                img = self.coaction_table[self.K.names[w[0]]]
            acc = acc + img.zshift(k) * c
        return acc

    def _coaction_word(self, w: tuple) -> dict:
        if not w:
            return {(((), ()), 0): ONE}
        if len(w) > 1:
            raise ValueError("coaction of a product is not tabulated")
        return self.coaction_table[self.K.names[w[0]]].terms


# ---------------------------------------------------------------------------
# crossed product
# ---------------------------------------------------------------------------


class CrossedElement:
    __slots__ = ("space", "terms")

    def __init__(self, space: "CrossedProduct", terms: dict):
        self.space = space
        self.terms = terms

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, ZERO) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return CrossedElement(self.space, out)

    def __neg__(self):
        return CrossedElement(self.space, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "CrossedElement") -> "CrossedElement":
        return self.space.multiply(self, other)

    def is_zero(self) -> bool:
        return not self.terms


class CrossedProduct:
    """``K ⊗ A`` with the product ``(h⊗a)(g⊗b) = Σ h g(1) ⊗ (a◁g(2)) b``."""

    def __init__(self, s: BicrossStructure):
        self.s = s
        self.order = s.order

    def element(self, terms: dict) -> CrossedElement:
        return CrossedElement(self, {t: c for t, c in terms.items() if c})

    def one(self) -> CrossedElement:
        return self.element({((), (), 0): ONE})

    def generator(self, name: str) -> CrossedElement:
        """``h ⊗ 1`` for a Lorentz generator, ``1 ⊗ a`` for a translation."""
        if name in self.s.K.index:
            return self.element({((self.s.K.index[name],), (), 0): ONE})
        if name in self.s.A.index:
            return self.element({((), (self.s.A.index[name],), 0): ONE})
        raise ValueError(f"unknown generator {name!r}")

    def from_parts(self, h: Element, a: Element) -> CrossedElement:
        h = transfer(h, self.s.K)
        a = transfer(a, self.s.A)
        acc: dict = {}
        for (hw, k1), c1 in h.terms.items():
            for (aw, k2), c2 in a.terms.items():
                if k1 + k2 <= self.order:
                    t = (hw, aw, k1 + k2)
                    acc[t] = acc.get(t, ZERO) + c1 * c2
        return self.element(acc)

    def multiply(self, x: CrossedElement, y: CrossedElement) -> CrossedElement:
        s = self.s
        K = self.order
        krw, arw = s.K.rewriter, s.A.rewriter
        acc: dict = {}
        for (g, b, k2), c2 in y.terms.items():
            dg = s.lorentz._word_coproduct(g)
            for (h, a, k1), c1 in x.terms.items():
                if k1 + k2 > K:
                    continue
                for ((g1, g2), e0), d0 in dg.items():
                    base = k1 + k2 + e0
                    if base > K:
                        continue
                    for hv, e1, f1 in krw.mono_mul(h, g1):
                        if base + e1 > K:
                            continue
                        for (av, e2), f2 in s.act_word(a, g2).items():
                            if base + e1 + e2 > K:
                                continue
                            for bv, e3, f3 in arw.mono_mul(av, b):
                                k = base + e1 + e2 + e3
                                if k <= K:
                                    t = (hv, bv, k)
                                    acc[t] = acc.get(t, ZERO) + c1 * c2 * d0 * f1 * f2 * f3
        return self.element(acc)

    def commutator(self, x: CrossedElement, y: CrossedElement) -> CrossedElement:
        return x * y - y * x

    def counit(self, x: CrossedElement) -> ZSeries:
        out = ZSeries((), self.order)
        for (h, a, k), c in x.terms.items():
            if not h and not a:
                out = out + ZSeries.monomial(c, k, self.order)
        return out

    def coproduct(self, x: CrossedElement) -> dict:
        """``Σ (h(1) ⊗ h(2)^(-1) a(1)) ⊗ (h(2)^(0) ⊗ a(2))`` for degree-one ``h``.

        Returned as ``{((kw1, aw1), (kw2, aw2), zpow): coef}``.
        """
        s = self.s
        K = self.order
        arw, krw = s.A.rewriter, s.K.rewriter
        acc: dict = {}
        for (h, a, k), c in x.terms.items():
            da = s.translations._word_coproduct(a)
            for ((h1, h2), e0), d0 in s.lorentz._word_coproduct(h).items():
                for ((bm, b0), e1), d1 in s._coaction_word(h2).items():
                    for ((a1, a2), e2), d2 in da.items():
                        base = k + e0 + e1 + e2
                        if base > K:
                            continue
                        for u, e3, d3 in arw.mono_mul(bm, a1):
                            if base + e3 > K:
                                continue
                            t = ((h1, u), (b0, a2), base + e3)
                            acc[t] = acc.get(t, ZERO) + c * d0 * d1 * d2 * d3
        return {t: c for t, c in acc.items() if c}

    def antipode(self, x: CrossedElement) -> CrossedElement:
        """``γ(h⊗a) = (1 ⊗ γ_A(h^(-1) a)) (γ_K(h^(0)) ⊗ 1)`` for degree-one ``h``."""
        s = self.s
        out = self.element({})
        for (h, a, k), c in x.terms.items():
            for ((bm, b0), e), d in s._coaction_word(h).items():
                left_a = Element(s.A, {(bm, e + k): c * d}).truncate(self.order) * Element(
                    s.A, {(a, 0): ONE}
                )
                sa = s.translations.antipode_of(left_a)
                sk = s.lorentz.antipode_of(Element(s.K, {(b0, 0): ONE}))
                out = out + self.from_parts(s.K.one(), sa) * self.from_parts(sk, s.A.one())
        return out

    # conversion -----------------------------------------------------
    def to_algebra(self, x: CrossedElement, target: Algebra) -> Element:
        """Send ``h ⊗ a`` to the product ``h a`` in ``target``."""
        s = self.s
        hmap = [target.index[n] for n in s.K.names]
        amap = [target.index[n] for n in s.A.names]
        K = min(self.order, target.order)
        acc: dict = {}
        for (h, a, k), c in x.terms.items():
            word = tuple(hmap[g] for g in h) + tuple(amap[g] for g in a)
            for v, e, d in target.rewriter.mono_mul((), word):
                if k + e <= K:
                    acc[(v, k + e)] = acc.get((v, k + e), ZERO) + c * d
        return Element(target, {t: c for t, c in acc.items() if c})

    def tensor_to_algebra(self, terms: dict, target: Algebra) -> TensorElement:
        acc = TensorElement.zero((target, target))
        for ((h1, a1), (h2, a2), k), c in terms.items():
            left = self.to_algebra(self.element({(h1, a1, 0): ONE}), target)
            right = self.to_algebra(self.element({(h2, a2, 0): ONE}), target)
            acc = acc + tensor(left, right).zshift(k) * c
        return acc

    def single_sector(self, x: CrossedElement, target: Algebra) -> Element | None:
        """``x`` as an element if every term is pure ``h⊗1`` or ``1⊗a``; else None."""
        if any(h and a for (h, a, _) in x.terms):
            return None
        return self.to_algebra(x, target)


def _residual(alg: Algebra, a: dict, b: dict) -> Element:
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, ZERO) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return Element(alg, out)


def _tensor_residual(legs, a: dict, b: dict) -> TensorElement:
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, ZERO) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return TensorElement(legs, out)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _sign_label(s: BicrossStructure) -> str:
    return "bicross"


def check_action_sign_coherence(s: BicrossStructure, reference: HopfPresentation | None = None) -> CheckResult:
    """Action entries equal the commutators ``[X, Y]`` of the reference algebra
    and lie in the translation subalgebra; sampled degree-2 extensions too."""
    ref = reference or build_bicross(s.order, s.fuel)

    def body(res: CheckResult):
        alg = ref.algebra
        for x in TRANSLATIONS:
            for h in LORENTZ:
                res.cases += 1
                entry = s.action_table[(x, h)]
                br = alg.bracket(x, h)
                lifted = transfer(entry, alg)
                r = lifted - br
                if not r.is_zero():
                    res.failures.append(Failure(f"{x}◁{h} vs [{x},{h}]", r))
        for x, y in itertools.combinations_with_replacement(TRANSLATIONS, 2):
            for h in LORENTZ:
                res.cases += 1
                prod = s.A.gen(x) * s.A.gen(y)
                val = transfer(s.action(prod, s.K.gen(h)), alg)
                comm = alg.gen(x) * alg.gen(y) * alg.gen(h) - alg.gen(h) * alg.gen(x) * alg.gen(y)
                r = val - comm
                if not r.is_zero():
                    res.failures.append(Failure(f"({x}{y})◁{h} vs commutator", r))

    return run_check("action_sign_coherence", "bicross", s.order, body)


def check_module_algebra(s: BicrossStructure, seed: int = 0, samples: int = 24) -> CheckResult:
    """Leibniz rule through the Lorentz coproduct, unit rule, and
    ``(a◁g)◁h = a◁(gh)`` with ``gh`` normal-ordered."""

    def body(res: CheckResult):
        A, K = s.A, s.K
        lor = s.lorentz
        hs = [K.gen(n) for n in LORENTZ]
        rng = random.Random(seed)
        words = hs + [K.gen(a) * K.gen(b) for a, b in rng.sample(list(itertools.product(LORENTZ, repeat=2)), 8)]
        for x, y in itertools.product(TRANSLATIONS, repeat=2):
            a, b = A.gen(x), A.gen(y)
            for h in words:
                res.cases += 1
                lhs = s.action(a * b, h)
                rhs = A.zero()
                d = lor.coproduct_of(h)
                for ((h1, h2), k), c in d.terms.items():
                    t1 = s.action(a, Element(K, {(h1, 0): ONE}))
                    t2 = s.action(b, Element(K, {(h2, 0): ONE}))
                    rhs = rhs + (t1 * t2).zshift(k) * c
                r = lhs - rhs
                if not r.is_zero():
                    res.failures.append(Failure(f"({x}{y})◁{h}", r))
        for h in words:
            res.cases += 1
            r = s.action(A.one(), h) - A.scalar(lor.counit_of(h))
            if not r.is_zero():
                res.failures.append(Failure(f"1◁{h}", r))
        pairs = list(itertools.product(LORENTZ, repeat=2))
        for x in TRANSLATIONS:
            for g, h in rng.sample(pairs, min(samples, len(pairs))):
                res.cases += 1
                a = A.gen(x)
                lhs = s.action(s.action(a, K.gen(g)), K.gen(h))
                rhs = s.action(a, K.gen(g) * K.gen(h))
                r = lhs - rhs
                if not r.is_zero():
                    res.failures.append(Failure(f"({x}◁{g})◁{h}", r))

    return run_check("module_algebra", "bicross", s.order, body)


def check_comodule_coalgebra(s: BicrossStructure) -> CheckResult:
    """Coaction and counit axioms of the coaction, and its compatibility with
    the Lorentz coproduct and counit, on every Lorentz generator."""

    def body(res: CheckResult):
        A, K = s.A, s.K
        tr, lor = s.translations, s.lorentz
        for n in LORENTZ:
            b = s.coaction_table[n]
            res.cases += 1
            if any(K.lorentz_degree(ws[1]) > 1 for (ws, _) in b.terms):
                res.failures.append(Failure(f"β({n}) leg 2 degree", b))
            lhs = apply_on_leg(tr.coproduct_of, b, 0)
            rhs = apply_on_leg(s.coaction, b, 1)
            r = lhs - rhs
            if not r.is_zero():
                res.failures.append(Failure(f"(Δ⊗id)β({n})", r))
            res.cases += 1
            r = apply_on_leg(tr.counit_of, b, 0) - K.gen(n)
            if not r.is_zero():
                res.failures.append(Failure(f"(ε⊗id)β({n})", r))
            res.cases += 1
            lhs = apply_on_leg(lor.coproduct_of, b, 1)
            legs = (A, K, K)
            acc: dict = {}
            Kord = s.order
            for ((h1, h2), k0), c0 in lor.coproduct[n].terms.items():
                for ((x1, u1), k1), c1 in s._coaction_word(h1).items():
                    for ((x2, u2), k2), c2 in s._coaction_word(h2).items():
                        base = k0 + k1 + k2
                        if base > Kord:
                            continue
                        for v, e, d in A.rewriter.mono_mul(x1, x2):
                            if base + e <= Kord:
                                t = ((v, u1, u2), base + e)
                                acc[t] = acc.get(t, ZERO) + c0 * c1 * c2 * d
            rhs = TensorElement(legs, {t: c for t, c in acc.items() if c})
            r = lhs - rhs
            if not r.is_zero():
                res.failures.append(Failure(f"(id⊗Δ)β({n})", r))
            res.cases += 1
            r = apply_on_leg(lor.counit_of, b, 1) - A.scalar(lor.counit[n])
            if not r.is_zero():
                res.failures.append(Failure(f"(id⊗ε)β({n})", r))

    return run_check("comodule_coalgebra", "bicross", s.order, body)


def check_action_coproduct_compat(s: BicrossStructure) -> CheckResult:
    """``ε(a◁h) = ε(a)ε(h)`` and
    ``Δ(a◁h) = Σ (a(1)◁h(1)) h(2)^(-1) ⊗ (a(2)◁h(2)^(0))`` on generator pairs."""

    def body(res: CheckResult):
        A, K = s.A, s.K
        tr, lor = s.translations, s.lorentz
        Kord = s.order
        for x in TRANSLATIONS:
            for n in LORENTZ:
                a, h = A.gen(x), K.gen(n)
                res.cases += 1
                r = tr.counit_of(s.action(a, h)) - tr.counit[x] * lor.counit[n]
                if not r.is_zero():
                    res.failures.append(Failure(f"ε({x}◁{n})", r))
                res.cases += 1
                lhs = tr.coproduct_of(s.action(a, h))
                acc: dict = {}
                for ((a1, a2), ka), ca in tr.coproduct[x].terms.items():
                    for ((h1, h2), kh), ch in lor.coproduct[n].terms.items():
                        for ((bm, b0), kb), cb in s._coaction_word(h2).items():
                            base = ka + kh + kb
                            if base > Kord:
                                continue
                            left = s.act_word(a1, h1)
                            right = s.act_word(a2, b0)
                            for (u, e1), d1 in left.items():
                                for v, e2, d2 in A.rewriter.mono_mul(u, bm):
                                    for (w, e3), d3 in right.items():
                                        k = base + e1 + e2 + e3
                                        if k <= Kord:
                                            t = ((v, w), k)
                                            acc[t] = acc.get(t, ZERO) + ca * ch * cb * d1 * d2 * d3
                rhs = TensorElement((A, A), {t: c for t, c in acc.items() if c})
                r = lhs - rhs
                if not r.is_zero():
                    res.failures.append(Failure(f"Δ({x}◁{n})", r))

    return run_check("action_coproduct_compat", "bicross", s.order, body)


def reconstructed_presentation(s: BicrossStructure) -> tuple[HopfPresentation, list[Failure]]:
    """Hopf presentation read off the crossed product on generators.

    Returns the presentation and structural failures (commutators that mix
    the two sectors cannot be read off as a bracket table).
    """
    cp = CrossedProduct(s)
    problems: list[Failure] = []
    F = FreeAlgebra(_alphabet(NULL_PLANE, LORENTZ), s.order, "z")
    gens = {n: cp.generator(n) for n in NULL_PLANE}
    brackets = {}
    for i, j in itertools.combinations(range(len(NULL_PLANE)), 2):
        x, y = NULL_PLANE[j], NULL_PLANE[i]
        c = cp.commutator(gens[x], gens[y])
        v = cp.single_sector(c, F)
        if v is None:
            problems.append(Failure(f"[{x},{y}] mixes sectors"))
            continue
        if not v.is_zero():
            brackets[(x, y)] = v
    alg = NCAlgebra(
        _alphabet(NULL_PLANE, LORENTZ), brackets, s.order, "z", "reconstructed",
        **({"fuel": s.fuel} if s.fuel else {}),
    )
    cop = {n: cp.tensor_to_algebra(cp.coproduct(gens[n]), alg) for n in NULL_PLANE}
    counit = {n: cp.counit(gens[n]) for n in NULL_PLANE}
    anti = {n: cp.to_algebra(cp.antipode(gens[n]), alg) for n in NULL_PLANE}
    return HopfPresentation("reconstructed", alg, cop, counit, anti), problems


def reconstruct(
    s: BicrossStructure, reference: HopfPresentation | None = None, seed: int = 0, samples: int = 16
) -> CheckResult:
    """Build the crossed product and compare it with the reference presentation
    entry for entry, then run the Hopf suite on the reconstruction."""
    ref = reference or build_bicross(s.order, s.fuel)

    def body(res: CheckResult):
        p, problems = reconstructed_presentation(s)
        res.failures.extend(problems)
        alg = p.algebra
        mine, theirs = alg.bracket_table(), ref.algebra.bracket_table()
        for key in sorted(set(mine) | set(theirs), key=lambda k: (alg.index[k[0]], alg.index[k[1]])):
            res.cases += 1
            a = mine[key].terms if key in mine else {}
            b = theirs[key].terms if key in theirs else {}
            if a != b:
                res.failures.append(Failure(f"[{key[0]},{key[1]}]", _residual(ref.algebra, a, b)))
        for n in NULL_PLANE:
            res.cases += 3
            if p.coproduct[n].terms != ref.coproduct[n].terms:
                res.failures.append(
                    Failure(f"Δ({n})", _tensor_residual((ref.algebra,) * 2, p.coproduct[n].terms, ref.coproduct[n].terms))
                )
            if p.counit[n] != ref.counit[n]:
                res.failures.append(Failure(f"ε({n})", p.counit[n] - ref.counit[n]))
            if p.antipode[n].terms != ref.antipode[n].terms:
                res.failures.append(
                    Failure(f"γ({n})", _residual(ref.algebra, p.antipode[n].terms, ref.antipode[n].terms))
                )
        # the crossed product itself versus the reconstructed algebra on longer words
        cp = CrossedProduct(s)
        rng = random.Random(seed)
        for _ in range(samples):
            names = [rng.choice(NULL_PLANE) for _ in range(3)]
            res.cases += 1
            x = cp.one()
            y = alg.one()
            for n in names:
                x = x * cp.generator(n)
                y = y * alg.gen(n)
            if cp.to_algebra(x, alg).terms != y.terms:
                res.failures.append(
                    Failure("product " + "*".join(names), _residual(alg, cp.to_algebra(x, alg).terms, y.terms))
                )
        for sub in [check_jacobi(p), *hopf_suite(p, seed)]:
            res.cases += sub.cases
            res.failures.extend(Failure(f"{sub.check}: {f.label}", f.residual) for f in sub.failures)
        res.notes.append(BETA_NOTE)

    return run_check("reconstruction", "bicross", s.order, body)


def bicross_suite(s: BicrossStructure, reference: HopfPresentation | None = None, seed: int = 0) -> list[CheckResult]:
    ref = reference or build_bicross(s.order, s.fuel)
    return [
        check_action_sign_coherence(s, ref),
        check_module_algebra(s, seed),
        check_comodule_coalgebra(s),
        check_action_coproduct_compat(s),
        reconstruct(s, ref, seed),
    ]
