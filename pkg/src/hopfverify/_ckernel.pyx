# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewriting kernel; same interface and results as ``_pykernel``.

Words stay tuples and coefficients stay Python rationals; the gain comes
from typed loop counters, direct dict access and cdef dispatch between the
memoized ordering routines.
"""
from ._pykernel import RewriteFuelError
from .scalars import ONE, ZERO

IMPLEMENTATION = "cython"


cdef class FreeRewriter:
    cdef public int order

    def __init__(self, int order):
        self.order = order

    def mono_gen(self, tuple w, g):
        return ((w + (g,), 0, ONE),)

    def mono_mul(self, tuple w, tuple v):
        return ((w + v, 0, ONE),)

    def mul_poly(self, dict a, dict b):
        return mul_poly(self, a, b)

    def normalize(self, raw):
        cdef dict acc = {}
        cdef int k
        for w, k, c in raw:
            if k <= self.order and c:
                key = (w, k)
                acc[key] = acc.get(key, ZERO) + c
        return {key: c for key, c in acc.items() if c}


cdef inline void _add(dict acc, object key, object c):
    cdef object old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        acc[key] = old + c


cdef tuple _freeze(dict acc):
    return tuple([(t[0], t[1], c) for t, c in acc.items() if c])


cdef class Rewriter:
    cdef public int order
    cdef public long fuel
    cdef dict _raw, _br, _mg, _mm
    cdef set _active
    cdef long _steps
    cdef int _depth

    def __init__(self, brackets, int order, long fuel=1_000_000):
        self.order = order
        self.fuel = fuel
        self._raw = dict(brackets)
        self._br = {}
        self._mg = {}
        self._mm = {}
        self._active = set()
        self._steps = 0
        self._depth = 0

    def cache_size(self):
        return len(self._mg) + len(self._mm)

    cdef inline void _enter(self):
        if self._depth == 0:
            self._steps = 0
        self._depth += 1

    cdef inline void _leave(self):
        self._depth -= 1

    def bracket(self, int x, int g):
        return self._bracket(x, g)

    cdef tuple _bracket(self, int x, int g):
        cdef object key2 = (x, g)
        cdef object r = self._br.get(key2)
        cdef dict acc
        cdef int k, e, kk
        if r is not None:
            return <tuple>r
        raw = self._raw.get(key2)
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
                    for v, e, d in self._mono_mul((), w):
                        kk = k + e
                        if kk <= self.order:
                            _add(acc, (v, kk), c * d)
                r = _freeze(acc)
            finally:
                self._active.discard(key)
        self._br[key2] = r
        return <tuple>r

    def mono_gen(self, tuple w, int g):
        return self._mono_gen(w, g)

    cdef tuple _mono_gen(self, tuple w, int g):
        cdef object key = (w, g)
        cdef object r = self._mg.get(key)
        cdef int K, x, a, b, k
        cdef tuple head
        cdef dict acc
        cdef Py_ssize_t n = len(w)
        if r is not None:
            return <tuple>r
        if n == 0 or <int>w[n - 1] <= g:
            r = ((w + (g,), 0, ONE),)
            self._mg[key] = r
            return <tuple>r
        if key in self._active:
            raise RewriteFuelError(f"rewriting cycle at word {w} times {g}")
        self._steps += 1
        if self._steps > self.fuel:
            raise RewriteFuelError(f"rewrite fuel {self.fuel} exhausted")
        self._active.add(key)
        try:
            K = self.order
            x = w[n - 1]
            head = w[:n - 1]
            acc = {}
            for u, a, c in self._mono_gen(head, g):
                for v, b, d in self._mono_gen(u, x):
                    k = a + b
                    if k <= K:
                        _add(acc, (v, k), c * d)
            for u, a, c in self._bracket(x, g):
                for v, b, d in self._mono_mul(head, u):
                    k = a + b
                    if k <= K:
                        _add(acc, (v, k), c * d)
            r = _freeze(acc)
        finally:
            self._active.discard(key)
        self._mg[key] = r
        return <tuple>r

    def mono_mul(self, tuple w, tuple v):
        return self._mono_mul(w, v)

    cdef tuple _mono_mul(self, tuple w, tuple v):
        cdef Py_ssize_t n = len(v)
        cdef object key, r
        cdef int K, g, a, b, k
        cdef dict acc
        if n == 0:
            return ((w, 0, ONE),)
        if n == 1:
            return self._mono_gen(w, v[0])
        key = (w, v)
        r = self._mm.get(key)
        if r is not None:
            return <tuple>r
        K = self.order
        g = v[n - 1]
        acc = {}
        for u, a, c in self._mono_mul(w, v[:n - 1]):
            for s, b, d in self._mono_gen(u, g):
                k = a + b
                if k <= K:
                    _add(acc, (s, k), c * d)
        r = _freeze(acc)
        self._mm[key] = r
        return <tuple>r

    def mul_poly(self, dict a, dict b):
        self._enter()
        try:
            return _mul_poly_rw(self, a, b)
        finally:
            self._leave()

    def normalize(self, raw):
        cdef dict acc = {}
        cdef int K = self.order
        cdef int k, e, kk
        self._enter()
        try:
            for w, k, c in raw:
                if k > K or not c:
                    continue
                for v, e, d in self._mono_mul((), w):
                    kk = k + e
                    if kk <= K:
                        _add(acc, (v, kk), c * d)
            return {t: c for t, c in acc.items() if c}
        finally:
            self._leave()


cdef dict _mul_poly_rw(Rewriter rw, dict a, dict b):
    cdef int K = rw.order
    cdef dict acc = {}
    cdef int ka, kb, k0, e, k
    for (w, ka), c in a.items():
        for (v, kb), d in b.items():
            k0 = ka + kb
            if k0 > K:
                continue
            cd = c * d
            for u, e, f in rw._mono_mul(w, v):
                k = k0 + e
                if k <= K:
                    _add(acc, (u, k), cd * f)
    return {t: c for t, c in acc.items() if c}


def mul_poly(rw, dict a, dict b):
    if isinstance(rw, Rewriter):
        return _mul_poly_rw(<Rewriter>rw, a, b)
    cdef int K = rw.order
    cdef dict acc = {}
    cdef int ka, kb, k0, e, k
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
                    _add(acc, (u, k), cd * f)
    return {t: c for t, c in acc.items() if c}


cdef tuple _mm(object rw, tuple w, tuple v):
    if isinstance(rw, Rewriter):
        return (<Rewriter>rw)._mono_mul(w, v)
    return tuple(rw.mono_mul(w, v))


def tensor_mul(dict a, dict b, rws, int order):
    """Leg-wise product of tensor polynomials ``{(words, zpow): coef}``."""
    cdef int K = order
    cdef dict acc = {}
    cdef Py_ssize_t arity = len(rws)
    cdef int ka, kb, k0, e1, e2, e3, k1, k2, k3, k, e
    cdef tuple l2, l3
    if arity == 2:
        r1, r2 = rws
        for (ws, ka), c in a.items():
            w1, w2 = ws
            for (vs, kb), d in b.items():
                k0 = ka + kb
                if k0 > K:
                    continue
                cd = c * d
                l2 = _mm(r2, w2, vs[1])
                for u1, e1, f1 in _mm(r1, w1, vs[0]):
                    k1 = k0 + e1
                    if k1 > K:
                        continue
                    c1 = cd * f1
                    for u2, e2, f2 in l2:
                        k2 = k1 + e2
                        if k2 <= K:
                            _add(acc, ((u1, u2), k2), c1 * f2)
    elif arity == 3:
        r1, r2, r3 = rws
        for (ws, ka), c in a.items():
            w1, w2, w3 = ws
            for (vs, kb), d in b.items():
                k0 = ka + kb
                if k0 > K:
                    continue
                cd = c * d
                l2 = _mm(r2, w2, vs[1])
                l3 = _mm(r3, w3, vs[2])
                for u1, e1, f1 in _mm(r1, w1, vs[0]):
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
                                _add(acc, ((u1, u2, u3), k3), c2 * f3)
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
                        for u, e, g in _mm(rw, w, v):
                            if k + e <= K:
                                nxt.append((us + (u,), k + e, f * g))
                    partial = nxt
                for us, k, f in partial:
                    _add(acc, (us, k), f)
    return {t: c for t, c in acc.items() if c}
