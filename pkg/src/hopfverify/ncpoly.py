"""Noncommutative polynomials in PBW normal form with series coefficients.

An :class:`Element` stores a dict ``{(word, zpow): coef}`` where ``word`` is a
tuple of generator ranks.  In an :class:`NCAlgebra` every stored word is
non-decreasing in rank; a :class:`FreeAlgebra` keeps words as written and is
used to assemble raw expressions before they are normal-ordered.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping, Sequence

from .kernel import FreeRewriter, Rewriter, RewriteFuelError
from .scalars import ONE, ZERO, Rational, ZSeries, as_rational

__all__ = [
    "Generator",
    "Algebra",
    "FreeAlgebra",
    "NCAlgebra",
    "Element",
    "AlgebraMorphism",
    "NonTruncatingExponential",
    "RewriteFuelError",
    "multiply",
    "commutator",
    "normal_order",
    "exp_element",
    "apply_morphism",
    "classical_part",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_FUEL = 1_000_000


class NonTruncatingExponential(ValueError):
    """exp() of an element whose series would not terminate at the order."""


@dataclass(frozen=True)
class Generator:
    name: str
    rank: int
    lorentz_degree: int = 0


class Algebra:
    """Common machinery: an ordered alphabet, a truncation order, a kernel."""

    def __init__(
        self,
        generators: Sequence[tuple[str, int] | str],
        order: int,
        param: str = "z",
        label: str = "",
    ):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        gens = []
        for rank, g in enumerate(generators):
            name, deg = (g, 0) if isinstance(g, str) else g
            gens.append(Generator(name, rank, deg))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.names: tuple[str, ...] = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.order = order
        self.param = param
        self.label = label
        self.rewriter = None

    # construction helpers -------------------------------------------
    def element(self, terms: Mapping) -> "Element":
        return Element(self, {t: c for t, c in terms.items() if c and t[1] <= self.order})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {((), 0): ONE})

    def scalar(self, c) -> "Element":
        if isinstance(c, ZSeries):
            return Element(self, {((), k): v for k, v in enumerate(c.coeffs) if v and k <= self.order})
        c = as_rational(c)
        return Element(self, {((), 0): c} if c else {})

    def z(self, power: int = 1) -> "Element":
        if power > self.order:
            return self.zero()
        return Element(self, {((), power): ONE})

    def gen(self, name: str) -> "Element":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} in algebra {self.label or self.names}") from None
        return Element(self, {((i,), 0): ONE})

    def gens(self) -> dict[str, "Element"]:
        return {n: self.gen(n) for n in self.names}

    def word(self, *names: str) -> tuple[int, ...]:
        return tuple(self.index[n] for n in names)

    def word_names(self, word: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.names[i] for i in word)

    def lorentz_degree(self, word: Iterable[int]) -> int:
        return sum(self.generators[i].lorentz_degree for i in word)

    def same_alphabet(self, other: "Algebra") -> bool:
        return self.names == other.names

    # arithmetic ------------------------------------------------------
    def _mul_terms(self, a: dict, b: dict) -> dict:
        return self.rewriter.mul_poly(a, b)

    def normal_order(self, x: "Element") -> "Element":
        if x.algebra is self:
            return x
        if not self.same_alphabet(x.algebra):
            raise ValueError("alphabet mismatch in normal_order")
        return Element(self, self.rewriter.normalize((w, k, c) for (w, k), c in x.terms.items()))

    def exp(self, x: "Element") -> "Element":
        return exp_element(x)

    def __repr__(self):
        return f"<{type(self).__name__} {self.label or '?'} order={self.order}>"


class FreeAlgebra(Algebra):
    """Words kept exactly as multiplied; no relations."""

    def __init__(self, generators, order, param="z", label="free"):
        super().__init__(generators, order, param, label)
        self.rewriter = FreeRewriter(order)


class NCAlgebra(Algebra):
    """Enveloping-type algebra presented by a bracket table.

    ``brackets`` maps generator-name pairs ``(X, Y)`` to elements (of any
    algebra over the same alphabet, typically a :class:`FreeAlgebra` of
    higher order) representing ``[X, Y]``.  Each unordered pair may appear
    once; missing pairs commute.
    """

    def __init__(
        self,
        generators,
        brackets: Mapping[tuple[str, str], "Element"],
        order: int,
        param: str = "z",
        label: str = "",
        fuel: int = DEFAULT_FUEL,
    ):
        super().__init__(generators, order, param, label)
        raw: dict[tuple[int, int], tuple] = {}
        self.bracket_source: dict[tuple[str, str], Element] = {}
        for (xn, yn), rhs in brackets.items():
            x, y = self.index[xn], self.index[yn]
            if x == y:
                raise ValueError(f"bracket of {xn} with itself")
            if not self.same_alphabet(rhs.algebra):
                raise ValueError(f"bracket [{xn},{yn}] uses a different alphabet")
            sign = ONE
            if x < y:
                x, y, sign = y, x, -ONE
            if (x, y) in raw:
                raise ValueError(f"duplicate bracket for pair ({xn}, {yn})")
            terms = tuple((w, k, sign * c) for (w, k), c in rhs.terms.items() if k <= order)
            raw[(x, y)] = terms
            self.bracket_source[(self.names[x], self.names[y])] = (
                rhs if sign == ONE else -rhs
            )
        self._raw_brackets = raw
        self._source_order = min(
            (rhs.algebra.order for rhs in brackets.values()), default=None
        )
        self._generator_spec = [(g.name, g.lorentz_degree) for g in self.generators]
        self._brackets_in = dict(brackets)
        self._siblings: dict[int, NCAlgebra] = {order: self}
        self.fuel = fuel
        self.rewriter = Rewriter(raw, order, fuel)

    def with_order(self, order: int) -> "NCAlgebra":
        """Same presentation at another truncation order.

        Raising the order is only possible up to the order at which the
        bracket right-hand sides were supplied.
        """
        alg = self._siblings.get(order)
        if alg is None:
            if self._source_order is not None and order > self._source_order:
                raise ValueError(
                    f"brackets of {self.label} are only known through order {self._source_order}"
                )
            alg = NCAlgebra(
                self._generator_spec, self._brackets_in, order, self.param, self.label, self.fuel
            )
            alg._siblings = self._siblings
            self._siblings[order] = alg
        return alg

    def bracket(self, xn: str, yn: str) -> "Element":
        """Normal-ordered ``[X, Y]`` for two generator names."""
        x, y = self.index[xn], self.index[yn]
        if x == y:
            return self.zero()
        if x > y:
            return Element(self, {(w, k): c for w, k, c in self.rewriter.bracket(x, y)})
        return -Element(self, {(w, k): c for w, k, c in self.rewriter.bracket(y, x)})

    def bracket_table(self) -> dict[tuple[str, str], "Element"]:
        """Nonzero normalized entries ``[X, Y]`` with ``rank(X) > rank(Y)``."""
        out = {}
        n = len(self.names)
        for x in range(n):
            for y in range(x):
                b = self.bracket(self.names[x], self.names[y])
                if not b.is_zero():
                    out[(self.names[x], self.names[y])] = b
        return out


class Element:
    """Immutable element of an :class:`Algebra`."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # coercion --------------------------------------------------------
    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                if not self.algebra.same_alphabet(other.algebra):
                    raise ValueError("elements live over different alphabets")
                if isinstance(self.algebra, NCAlgebra) and isinstance(other.algebra, NCAlgebra):
                    raise ValueError(
                        f"elements of different algebras ({self.algebra.label}, {other.algebra.label})"
                    )
            return other
        if isinstance(other, (int, ZSeries)) or hasattr(other, "denominator"):
            return self.algebra.scalar(other)
        return NotImplemented

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for t, c in other.terms.items():
            if t[1] > self.algebra.order:
                continue
            v = out.get(t, ZERO) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            self._coerce(other)
            return Element(self.algebra, self.algebra._mul_terms(self.terms, other.terms))
        if isinstance(other, ZSeries):
            return self * self.algebra.scalar(other)
        try:
            c = as_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {t: c * v for t, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, ZSeries):
            return self.algebra.scalar(other) * self
        return self.__mul__(other)

    def __truediv__(self, other):
        c = as_rational(other)
        return self * (ONE / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def zshift(self, n: int = 1) -> "Element":
        K = self.algebra.order
        return Element(self.algebra, {(w, k + n): c for (w, k), c in self.terms.items() if k + n <= K})

    def div_z(self) -> "Element":
        """Exact division by z; requires a vanishing z^0 part."""
        if any(k == 0 for (_, k) in self.terms):
            raise ZeroDivisionError("element has a nonzero z^0 part")
        return Element(self.algebra, {(w, k - 1): c for (w, k), c in self.terms.items()})

    # inspection ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def valuation(self) -> int | None:
        return min((k for (_, k) in self.terms), default=None)

    def max_degree(self) -> int:
        return max((len(w) for (w, _) in self.terms), default=0)

    def classical_part(self) -> "Element":
        return Element(self.algebra, {t: c for t, c in self.terms.items() if t[1] == 0})

    def truncate(self, order: int) -> "Element":
        return Element(self.algebra, {t: c for t, c in self.terms.items() if t[1] <= order})

    def series_terms(self) -> dict[tuple[str, ...], ZSeries]:
        """Monomial (as generator names) to coefficient series."""
        K = self.algebra.order
        grouped: dict[tuple, list] = {}
        for (w, k), c in self.terms.items():
            grouped.setdefault(w, [ZERO] * (K + 1))[k] = c
        return {self.algebra.word_names(w): ZSeries(cs, K) for w, cs in grouped.items()}

    def coefficient(self, *names: str) -> ZSeries:
        w = self.algebra.word(*names)
        K = self.algebra.order
        cs = [ZERO] * (K + 1)
        for (v, k), c in self.terms.items():
            if v == w:
                cs[k] = c
        return ZSeries(cs, K)

    def constant_term(self) -> ZSeries:
        return self.coefficient()

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra.same_alphabet(other.algebra) and self.terms == other.terms
        if isinstance(other, int) or hasattr(other, "denominator") or isinstance(other, ZSeries):
            return self == self.algebra.scalar(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __str__(self):
        from .algfile import format_element

        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


def multiply(a: Element, b: Element) -> Element:
    return a * b


def commutator(a: Element, b: Element) -> Element:
    return a * b - b * a


def normal_order(raw: Element, algebra: NCAlgebra) -> Element:
    return algebra.normal_order(raw)


def exp_element(a: Element) -> Element:
    """Truncated exponential ``sum a^n/n!``; ``a`` must have z-valuation >= 1."""
    v = a.valuation()
    alg = a.algebra
    if v is None:
        return alg.one()
    if v < 1:
        raise NonTruncatingExponential("exponent has a z^0 part; the series would not terminate")
    result = alg.one()
    power = alg.one()
    for n in range(1, alg.order // v + 1):
        power = power * a
        if power.is_zero():
            break
        result = result + power * (ONE / Rational(factorial(n)))
    return result


def classical_part(a: Element) -> Element:
    return a.classical_part()


class AlgebraMorphism:
    """Algebra map given on generators and extended multiplicatively.

    ``param_scale`` relates the deformation parameters: a source ``z**k``
    becomes ``param_scale**k * z_target**k``.
    """

    def __init__(
        self,
        source_names: Sequence[str],
        target: Algebra,
        images: Mapping[str, Element],
        param_scale=1,
        label: str = "",
    ):
        self.source_names = tuple(source_names)
        self.target = target
        self.param_scale = as_rational(param_scale)
        self.label = label
        missing = set(self.source_names) - set(images)
        if missing:
            raise ValueError(f"morphism {label}: no image for {sorted(missing)}")
        self.images: dict[str, Element] = {}
        for name, img in images.items():
            if name not in self.source_names:
                raise ValueError(f"morphism {label}: image for unknown generator {name!r}")
            self.images[name] = target.normal_order(img) if img.algebra is not target else img
        self._gen_terms = [self.images[n].terms for n in self.source_names]
        self._word_cache: dict[tuple, dict] = {(): {((), 0): ONE}}

    def _word_image(self, w: tuple) -> dict:
        r = self._word_cache.get(w)
        if r is None:
            head = self._word_image(w[:-1])
            r = self.target._mul_terms(head, self._gen_terms[w[-1]])
            self._word_cache[w] = r
        return r

    def __call__(self, a: Element) -> Element:
        if a.algebra.names != self.source_names:
            raise ValueError(f"morphism {self.label}: element is not over the source alphabet")
        K = self.target.order
        acc: dict = {}
        s = self.param_scale
        for (w, k), c in a.terms.items():
            if k > K:
                continue
            coef = c * s**k
            for (v, e), d in self._word_image(w).items():
                kk = k + e
                if kk <= K:
                    t = (v, kk)
                    acc[t] = acc.get(t, ZERO) + coef * d
        return Element(self.target, {t: c for t, c in acc.items() if c})

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self ∘ other`` (apply ``other`` first)."""
        return AlgebraMorphism(
            other.source_names,
            self.target,
            {n: self(img) for n, img in other.images.items()},
            other.param_scale * self.param_scale,
            label=f"{self.label}∘{other.label}",
        )


def apply_morphism(m: AlgebraMorphism, a: Element) -> Element:
    return m(a)
