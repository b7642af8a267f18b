"""Second and third tensor powers: leg-wise products, flip, embeddings.

A :class:`TensorElement` keeps one algebra per leg (usually the same one
repeated) and a dict ``{((w1, w2, ...), zpow): coef}``.  Legs are normal
ordered independently; nothing ever moves across a leg boundary.
"""
from __future__ import annotations

from math import factorial
from typing import Callable, Sequence

from .kernel import tensor_mul as _tensor_mul
from .ncpoly import Algebra, Element, NonTruncatingExponential
from .scalars import ONE, ZERO, Rational, ZSeries, as_rational

__all__ = [
    "TensorElement",
    "tensor",
    "tensor_mul",
    "flip",
    "embed",
    "apply_on_leg",
    "multiply_legs",
    "tensor_exp",
    "retarget",
]

_LEGS = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}


class TensorElement:
    __slots__ = ("legs", "terms")

    def __init__(self, legs: Sequence[Algebra], terms: dict):
        self.legs = tuple(legs)
        self.terms = terms

    @property
    def arity(self) -> int:
        return len(self.legs)

    @property
    def order(self) -> int:
        return min(a.order for a in self.legs)

    @classmethod
    def zero(cls, legs: Sequence[Algebra]) -> "TensorElement":
        return cls(legs, {})

    @classmethod
    def one(cls, legs: Sequence[Algebra]) -> "TensorElement":
        return cls(legs, {(((),) * len(legs), 0): ONE})

    def _check(self, other: "TensorElement"):
        if not isinstance(other, TensorElement):
            raise TypeError(f"expected TensorElement, got {type(other).__name__}")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        for a, b in zip(self.legs, other.legs):
            if not a.same_alphabet(b):
                raise ValueError("tensor legs use different alphabets")

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        K = self.order
        out = dict(self.terms)
        for t, c in other.terms.items():
            if t[1] > K:
                continue
            v = out.get(t, ZERO) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return TensorElement(self.legs, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.legs, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            rws = [a.rewriter for a in self.legs]
            return TensorElement(self.legs, _tensor_mul(self.terms, other.terms, rws, self.order))
        if isinstance(other, ZSeries):
            acc = TensorElement.zero(self.legs)
            for k, c in enumerate(other.coeffs):
                if c:
                    acc = acc + (self.zshift(k) * c)
            return acc
        try:
            c = as_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return TensorElement.zero(self.legs)
        return TensorElement(self.legs, {t: c * v for t, v in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def zshift(self, n: int = 1) -> "TensorElement":
        K = self.order
        return TensorElement(
            self.legs, {(ws, k + n): c for (ws, k), c in self.terms.items() if k + n <= K}
        )

    def div_z(self) -> "TensorElement":
        if any(k == 0 for (_, k) in self.terms):
            raise ZeroDivisionError("tensor has a nonzero z^0 part")
        return TensorElement(self.legs, {(ws, k - 1): c for (ws, k), c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def valuation(self) -> int | None:
        return min((k for (_, k) in self.terms), default=None)

    def classical_part(self) -> "TensorElement":
        return TensorElement(self.legs, {t: c for t, c in self.terms.items() if t[1] == 0})

    def truncate(self, order: int) -> "TensorElement":
        return TensorElement(self.legs, {t: c for t, c in self.terms.items() if t[1] <= order})

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return (
                self.arity == other.arity
                and all(a.same_alphabet(b) for a, b in zip(self.legs, other.legs))
                and self.terms == other.terms
            )
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __str__(self):
        from .algfile import format_element

        return format_element(self)

    def __repr__(self):
        return f"TensorElement({self})"


def tensor(*factors: Element) -> TensorElement:
    """Elementary tensor ``x1 ⊗ x2 ⊗ ...``."""
    legs = [f.algebra for f in factors]
    K = min(a.order for a in legs)
    partial = [((), 0, ONE)]
    for f in factors:
        nxt = []
        for ws, k, c in partial:
            for (w, e), d in f.terms.items():
                if k + e <= K:
                    nxt.append((ws + (w,), k + e, c * d))
        partial = nxt
    acc: dict = {}
    for ws, k, c in partial:
        t = (ws, k)
        acc[t] = acc.get(t, ZERO) + c
    return TensorElement(legs, {t: c for t, c in acc.items() if c})


def retarget(t: TensorElement, legs: Sequence[Algebra]) -> TensorElement:
    """Re-express ``t`` with new leg algebras (normal-ordering each leg)."""
    legs = tuple(legs)
    if all(a is b for a, b in zip(t.legs, legs)):
        return t
    acc: dict = {}
    K = min(a.order for a in legs)
    for (ws, k), c in t.terms.items():
        if k > K:
            continue
        partial = {((), k): c}
        for alg, w in zip(legs, ws):
            nxt: dict = {}
            for (us, kk), d in partial.items():
                for v, e, f in alg.rewriter.mono_mul((), w):
                    if kk + e <= K:
                        key = (us + (v,), kk + e)
                        nxt[key] = nxt.get(key, ZERO) + d * f
            partial = nxt
        for key, d in partial.items():
            acc[key] = acc.get(key, ZERO) + d
    return TensorElement(legs, {t: c for t, c in acc.items() if c})


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    return a * b


def flip(a: TensorElement) -> TensorElement:
    if a.arity != 2:
        raise ValueError("flip needs arity 2")
    return TensorElement(
        (a.legs[1], a.legs[0]), {((w2, w1), k): c for ((w1, w2), k), c in a.terms.items()}
    )


def embed(a: TensorElement, legs: str, third: Algebra | None = None) -> TensorElement:
    """Place an arity-2 tensor on legs ``12``, ``13`` or ``23`` of an arity-3 one."""
    if a.arity != 2:
        raise ValueError("embed needs an arity-2 tensor")
    if legs not in _LEGS:
        raise ValueError(f"bad leg selector {legs!r}; use one of 12, 13, 23")
    i, j = _LEGS[legs]
    (omitted,) = {0, 1, 2} - {i, j}
    spare = third or a.legs[0]
    alg = [None, None, None]
    alg[i], alg[j], alg[omitted] = a.legs[0], a.legs[1], spare
    out = {}
    for ((w1, w2), k), c in a.terms.items():
        ws = [(), (), ()]
        ws[i], ws[j] = w1, w2
        out[(tuple(ws), k)] = c
    return TensorElement(alg, out)


def apply_on_leg(
    m: Callable[[Element], Element | TensorElement | ZSeries],
    a: TensorElement,
    leg: int,
    target: Algebra | None = None,
) -> TensorElement | Element:
    """Apply a linear map to one leg (0-based) of every term.

    ``m`` is evaluated on single words (as elements).  If it returns a
    TensorElement the arity grows; a ZSeries result (a counit) removes the
    leg.  When the resulting arity is 1 an :class:`Element` is returned.
    """
    if not 0 <= leg < a.arity:
        raise ValueError(f"leg index {leg} out of range for arity {a.arity}")
    src = a.legs[leg]
    K = a.order
    cache: dict = {}
    acc: dict = {}
    new_legs = None
    for (ws, k), c in a.terms.items():
        w = ws[leg]
        img = cache.get(w)
        if img is None:
            img = m(Element(src, {(w, 0): ONE}))
            cache[w] = img
        before, after = ws[:leg], ws[leg + 1 :]
        if isinstance(img, ZSeries):
            legs = a.legs[:leg] + a.legs[leg + 1 :]
            for e, d in enumerate(img.coeffs):
                if d and k + e <= K:
                    t = (before + after, k + e)
                    acc[t] = acc.get(t, ZERO) + c * d
        elif isinstance(img, TensorElement):
            legs = a.legs[:leg] + img.legs + a.legs[leg + 1 :]
            for (vs, e), d in img.terms.items():
                if k + e <= K:
                    t = (before + vs + after, k + e)
                    acc[t] = acc.get(t, ZERO) + c * d
        else:
            legs = a.legs[:leg] + (img.algebra,) + a.legs[leg + 1 :]
            for (v, e), d in img.terms.items():
                if k + e <= K:
                    t = (before + (v,) + after, k + e)
                    acc[t] = acc.get(t, ZERO) + c * d
        new_legs = legs
    if new_legs is None:
        # empty input: infer legs from a probe of the unit word
        img = m(Element(src, {((), 0): ONE}))
        if isinstance(img, ZSeries):
            new_legs = a.legs[:leg] + a.legs[leg + 1 :]
        elif isinstance(img, TensorElement):
            new_legs = a.legs[:leg] + img.legs + a.legs[leg + 1 :]
        else:
            new_legs = a.legs[:leg] + (img.algebra,) + a.legs[leg + 1 :]
    terms = {t: c for t, c in acc.items() if c}
    if len(new_legs) == 1:
        return Element(new_legs[0], {(ws[0], k): c for (ws, k), c in terms.items()})
    return TensorElement(new_legs, terms)


def multiply_legs(a: TensorElement, target: Algebra | None = None) -> Element:
    """Multiplication map ``x1 ⊗ x2 ⊗ ... -> x1 x2 ...`` into one algebra."""
    alg = target or a.legs[0]
    rw = alg.rewriter
    K = min(alg.order, a.order)
    acc: dict = {}
    for (ws, k), c in a.terms.items():
        partial = {((), k): c}
        for w in ws:
            nxt: dict = {}
            for (u, kk), d in partial.items():
                for v, e, f in rw.mono_mul(u, w):
                    if kk + e <= K:
                        t = (v, kk + e)
                        nxt[t] = nxt.get(t, ZERO) + d * f
            partial = nxt
        for t, d in partial.items():
            acc[t] = acc.get(t, ZERO) + d
    return Element(alg, {t: c for t, c in acc.items() if c})


def tensor_exp(a: TensorElement) -> TensorElement:
    """Truncated exponential of a tensor with z-valuation >= 1."""
    v = a.valuation()
    if v is None:
        return TensorElement.one(a.legs)
    if v < 1:
        raise NonTruncatingExponential("tensor exponent has a z^0 part")
    result = TensorElement.one(a.legs)
    power = TensorElement.one(a.legs)
    for n in range(1, a.order // v + 1):
        power = power * a
        if power.is_zero():
            break
        result = result + power * (ONE / Rational(factorial(n)))
    return result
