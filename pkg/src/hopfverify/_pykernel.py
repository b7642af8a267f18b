"""Pure-Python rewriting kernel (fallback for the compiled ``_ckernel``).

Terms are triples ``(word, zpow, coef)`` where ``word`` is a tuple of
generator ranks.  Polynomials are dicts ``{(word, zpow): coef}``.  Every
result is truncated at ``zpow <= order``.
"""
from __future__ import annotations

from .scalars import ONE, ZERO

IMPLEMENTATION = "python"


class RewriteFuelError(RuntimeError):
    """Raised when normal ordering exceeds its step budget or cycles."""


class FreeRewriter:
    """Concatenation product: the free algebra has no relations."""

    def __init__(self, order):
        self.order = order

    def mono_gen(self, w, g):
        return ((w + (g,), 0, ONE),)

    def mono_mul(self, w, v):
        return ((w + v, 0, ONE),)

    def mul_poly(self, a, b):
        return mul_poly(self, a, b)

    def normalize(self, raw):
        acc = {}
        for w, k, c in raw:
            if k <= self.order and c:
                key = (w, k)
                acc[key] = acc.get(key, ZERO) + c
        return {key: c for key, c in acc.items() if c}


class Rewriter:
    """PBW normal ordering against a bracket table.

    ``brackets`` maps ``(x, g)`` with ``x > g`` to raw terms of ``[x, g]``;
    a missing entry means the pair commutes.  Raw right-hand sides are
    normal-ordered lazily on first use.
    """

    def __init__(self, brackets, order, fuel=1_000_000):
        self.order = order
        self.fuel = fuel
        self._raw = dict(brackets)
        self._br = {}
        self._mg = {}
        self._mm = {}
        self._active = set()
        self._steps = 0
        self._depth = 0

    # bookkeeping -----------------------------------------------------
    def _enter(self):
        if self._depth == 0:
            self._steps = 0
        self._depth += 1

    def _leave(self):
        self._depth -= 1

    def cache_size(self):
        return len(self._mg) + len(self._mm)

    # core ------------------------------------------------------------
    def bracket(self, x, g):
        r = self._br.get((x, g))
        if r is not None:
            return r
        raw = self._raw.get((x, g))
        if not raw:
            r = ()
        else:
            key = ("bracket", x, g)
            if key in self._active:
                raise RewriteFuelError(f"cyclic bracket expansion for pair {(x, g)}")
            self._active.add(key)
            try:
                acc = {}
                for w, k, c in raw:
                    if k > self.order:
                        continue
                    for v, e, d in self.mono_mul((), w):
                        kk = k + e
                        if kk <= self.order:
                            t = (v, kk)
                            acc[t] = acc.get(t, ZERO) + c * d
                r = tuple((v, k, c) for (v, k), c in acc.items() if c)
            finally:
                self._active.discard(key)
        self._br[(x, g)] = r
        return r

    def mono_gen(self, w, g):
        key = (w, g)
        r = self._mg.get(key)
        if r is not None:
            return r
        if not w or w[-1] <= g:
            r = ((w + (g,), 0, ONE),)
            self._mg[key] = r
            return r
        if key in self._active:
            raise RewriteFuelError(f"rewriting cycle at word {w} times {g}")
        self._steps += 1
        if self._steps > self.fuel:
            raise RewriteFuelError(f"rewrite fuel {self.fuel} exhausted")
        self._active.add(key)
        try:
            K = self.order
            x = w[-1]
            head = w[:-1]
            acc = {}
            for u, a, c in self.mono_gen(head, g):
                for v, b, d in self.mono_gen(u, x):
                    k = a + b
                    if k <= K:
                        t = (v, k)
                        acc[t] = acc.get(t, ZERO) + c * d
            for u, a, c in self.bracket(x, g):
                for v, b, d in self.mono_mul(head, u):
                    k = a + b
                    if k <= K:
                        t = (v, k)
                        acc[t] = acc.get(t, ZERO) + c * d
            r = tuple((v, k, c) for (v, k), c in acc.items() if c)
        finally:
            self._active.discard(key)
        self._mg[key] = r
        return r

    def mono_mul(self, w, v):
        n = len(v)
        if n == 0:
            return ((w, 0, ONE),)
        if n == 1:
            return self.mono_gen(w, v[0])
        key = (w, v)
        r = self._mm.get(key)
        if r is not None:
            return r
        K = self.order
        g = v[-1]
        acc = {}
        for u, a, c in self.mono_mul(w, v[:-1]):
            for s, b, d in self.mono_gen(u, g):
                k = a + b
                if k <= K:
                    t = (s, k)
                    acc[t] = acc.get(t, ZERO) + c * d
        r = tuple((s, k, c) for (s, k), c in acc.items() if c)
        self._mm[key] = r
        return r

    def mul_poly(self, a, b):
        self._enter()
        try:
            return mul_poly(self, a, b)
        finally:
            self._leave()

    def normalize(self, raw):
        """Normal-order raw ``(word, zpow, coef)`` terms into a dict."""
        self._enter()
        try:
            K = self.order
            acc = {}
            for w, k, c in raw:
                if k > K or not c:
                    continue
                for v, e, d in self.mono_mul((), w):
                    kk = k + e
                    if kk <= K:
                        t = (v, kk)
                        acc[t] = acc.get(t, ZERO) + c * d
            return {t: c for t, c in acc.items() if c}
        finally:
            self._leave()


def mul_poly(rw, a, b):
    K = rw.order
    acc = {}
    mono_mul = rw.mono_mul
    for (w, ka), c in a.items():
        for (v, kb), d in b.items():
            k0 = ka + kb
            if k0 > K:
                continue
            cd = c * d
            for u, e, f in mono_mul(w, v):
                k = k0 + e
                if k <= K:
                    t = (u, k)
                    acc[t] = acc.get(t, ZERO) + cd * f
    return {t: c for t, c in acc.items() if c}


def tensor_mul(a, b, rws, order):
    """Leg-wise product of tensor polynomials ``{(words, zpow): coef}``."""
    K = order
    acc = {}
    arity = len(rws)
    if arity == 2:
        r1, r2 = rws
        for (ws, ka), c in a.items():
            w1, w2 = ws
            for (vs, kb), d in b.items():
                k0 = ka + kb
                if k0 > K:
                    continue
                cd = c * d
                l2 = r2.mono_mul(w2, vs[1])
                for u1, e1, f1 in r1.mono_mul(w1, vs[0]):
                    k1 = k0 + e1
                    if k1 > K:
                        continue
                    c1 = cd * f1
                    for u2, e2, f2 in l2:
                        k2 = k1 + e2
                        if k2 <= K:
                            t = ((u1, u2), k2)
                            acc[t] = acc.get(t, ZERO) + c1 * f2
    elif arity == 3:
        r1, r2, r3 = rws
        for (ws, ka), c in a.items():
            w1, w2, w3 = ws
            for (vs, kb), d in b.items():
                k0 = ka + kb
                if k0 > K:
                    continue
                cd = c * d
                l2 = r2.mono_mul(w2, vs[1])
                l3 = r3.mono_mul(w3, vs[2])
                for u1, e1, f1 in r1.mono_mul(w1, vs[0]):
                    k1 = k0 + e1
                    if k1 > K:
                        continue
                    c1 = cd * f1
                    for u2, e2, f2 in l2:
                        k2 = k1 + e2
                        if k2 > K:
                            continue
                        c2 = c1 * f2
                        for u3, e3, f3 in l3:
                            k3 = k2 + e3
                            if k3 <= K:
                                t = ((u1, u2, u3), k3)
                                acc[t] = acc.get(t, ZERO) + c2 * f3
    else:
        for (ws, ka), c in a.items():
            for (vs, kb), d in b.items():
                k0 = ka + kb
                if k0 > K:
                    continue
                partial = [((), k0, c * d)]
                for rw, w, v in zip(rws, ws, vs):
                    nxt = []
                    for us, k, f in partial:
                        for u, e, g in rw.mono_mul(w, v):
                            if k + e <= K:
                                nxt.append((us + (u,), k + e, f * g))
                    partial = nxt
                for us, k, f in partial:
                    t = (us, k)
                    acc[t] = acc.get(t, ZERO) + f
    return {t: c for t, c in acc.items() if c}
