"""Select the rewriting kernel at import time.

The compiled ``_ckernel`` extension is used when it was built; otherwise the
pure-Python ``_pykernel`` is loaded.  Setting ``HOPFVERIFY_PURE=1`` forces the
fallback.
"""
from __future__ import annotations

import os

from . import _pykernel
from ._pykernel import RewriteFuelError

_impl = _pykernel
if not os.environ.get("HOPFVERIFY_PURE"):
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernel

Rewriter = _impl.Rewriter
FreeRewriter = _impl.FreeRewriter
mul_poly = _impl.mul_poly
tensor_mul = _impl.tensor_mul
IMPLEMENTATION = _impl.IMPLEMENTATION

__all__ = [
    "Rewriter",
    "FreeRewriter",
    "RewriteFuelError",
    "mul_poly",
    "tensor_mul",
    "IMPLEMENTATION",
]
