"""Exact rationals and truncated power series in one deformation parameter.

``Rational`` is :class:`gmpy2.mpq` when gmpy2 is importable and
:class:`fractions.Fraction` otherwise.  Both are always reduced and keep a
positive denominator, so they satisfy the invariants we need without any
wrapping.
"""
from __future__ import annotations

from math import factorial
from typing import Iterable, Sequence

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

__all__ = [
    "Rational",
    "ZERO",
    "ONE",
    "as_rational",
    "ZSeries",
    "series_add",
    "series_mul",
    "series_scalar_exp",
]

ZERO = Rational(0)
ONE = Rational(1)


def as_rational(x) -> "Rational":
    """Coerce ints, strings like ``"3/4"`` and rationals to ``Rational``."""
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Rational(int(num), int(den) if den else 1)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use exact rationals")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Rational(int(x.numerator), int(x.denominator))
    return Rational(x)


class ZSeries:
    """A power series ``sum c_n z^n`` truncated after ``z^order``.

    Instances are immutable.  Binary operations between series of different
    truncation orders re-truncate to the smaller order.
    """

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Iterable = (), order: int = 6):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = [as_rational(c) for c in coeffs]
        cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._order = order

    @classmethod
    def _raw(cls, coeffs: tuple, order: int) -> "ZSeries":
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj._order = order
        return obj

    @classmethod
    def constant(cls, c, order: int = 6) -> "ZSeries":
        return cls([c], order)

    @classmethod
    def monomial(cls, c, power: int, order: int = 6) -> "ZSeries":
        if power > order:
            return cls((), order)
        return cls([0] * power + [c], order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __getitem__(self, n: int):
        if 0 <= n <= self._order:
            return self._coeffs[n]
        return ZERO

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def valuation(self) -> int | None:
        for n, c in enumerate(self._coeffs):
            if c:
                return n
        return None

    def truncate(self, order: int) -> "ZSeries":
        if order >= self._order:
            return self
        return ZSeries._raw(self._coeffs[: order + 1], order)

    def _align(self, other: "ZSeries") -> tuple["ZSeries", "ZSeries", int]:
        k = min(self._order, other._order)
        return self.truncate(k), other.truncate(k), k

    def __add__(self, other):
        if not isinstance(other, ZSeries):
            other = ZSeries.constant(other, self._order)
        a, b, k = self._align(other)
        return ZSeries._raw(tuple(x + y for x, y in zip(a._coeffs, b._coeffs)), k)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries._raw(tuple(-c for c in self._coeffs), self._order)

    def __sub__(self, other):
        if not isinstance(other, ZSeries):
            other = ZSeries.constant(other, self._order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ZSeries):
            c = as_rational(other)
            return ZSeries._raw(tuple(c * x for x in self._coeffs), self._order)
        a, b, k = self._align(other)
        out = [ZERO] * (k + 1)
        for i, x in enumerate(a._coeffs):
            if not x:
                continue
            for j in range(k + 1 - i):
                y = b._coeffs[j]
                if y:
                    out[i + j] += x * y
        return ZSeries._raw(tuple(out), k)

    __rmul__ = __mul__

    def shift(self, n: int = 1) -> "ZSeries":
        """Multiply by ``z**n``."""
        cs = (ZERO,) * n + self._coeffs
        return ZSeries._raw(cs[: self._order + 1], self._order)

    def divide_by_z(self) -> "ZSeries":
        """Exact division by ``z``; the result is known one order less."""
        if self._coeffs[0]:
            raise ZeroDivisionError("series has a nonzero constant term")
        if self._order == 0:
            raise ZeroDivisionError("cannot divide an order-0 series by z")
        return ZSeries._raw(self._coeffs[1:], self._order - 1)

    def __eq__(self, other):
        if isinstance(other, ZSeries):
            a, b, _ = self._align(other)
            return a._coeffs == b._coeffs
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self == ZSeries.constant(other, self._order)
        return NotImplemented

    def __hash__(self):
        return hash((self._coeffs, self._order))

    def __repr__(self):
        return f"ZSeries({[str(c) for c in self._coeffs]}, order={self._order})"

    def to_str(self, symbol: str = "z") -> str:
        parts = []
        for n, c in enumerate(self._coeffs):
            if not c:
                continue
            zpart = "" if n == 0 else (symbol if n == 1 else f"{symbol}^{n}")
            if not zpart:
                parts.append(str(c))
            elif c == 1:
                parts.append(zpart)
            elif c == -1:
                parts.append("-" + zpart)
            else:
                parts.append(f"{c}*{zpart}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_str


def series_add(a: ZSeries, b: ZSeries) -> ZSeries:
    return a + b


def series_mul(a: ZSeries, b: ZSeries) -> ZSeries:
    return a * b


def series_scalar_exp(c, order: int = 6) -> ZSeries:
    """Expansion of ``exp(c*z)`` up to ``z**order``."""
    c = as_rational(c)
    return ZSeries._raw(
        tuple(c**n / factorial(n) for n in range(order + 1)), order
    )


def exp_coefficients(c, order: int) -> Sequence:
    """``c**n / n!`` for ``n = 0..order`` as Rationals."""
    c = as_rational(c)
    return [c**n / Rational(factorial(n)) for n in range(order + 1)]
