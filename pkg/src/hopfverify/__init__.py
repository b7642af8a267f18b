"""Exact, truncated verification of the null-plane quantum Poincaré algebra.

The core types are re-exported here; the presentations, checks and file
format live in their own modules (``models``, ``hopfdef``, ``bicross``,
``algfile``).
"""
from .kernel import IMPLEMENTATION
from .ncpoly import AlgebraMorphism, Element, FreeAlgebra, NCAlgebra
from .scalars import Rational, ZSeries
from .tensorspace import TensorElement

__version__ = "0.1.0"

__all__ = [
    "IMPLEMENTATION",
    "AlgebraMorphism",
    "Element",
    "FreeAlgebra",
    "NCAlgebra",
    "Rational",
    "ZSeries",
    "TensorElement",
    "__version__",
]
