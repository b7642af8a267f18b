"""Frozen oracle coefficients.

Produced by ``tools/derive_oracles.py`` (commutative sympy series expansion,
independent of this package) and pasted here; index n is the coefficient of
the n-th power of the deformation parameter.
"""
from fractions import Fraction as F

# (1 - e^{-zx})/z, coefficient of z^n x^(n+1)
K3_PPLUS_BICROSS = [F(1, 1), F(-1, 2), F(1, 6), F(-1, 24), F(1, 120), F(-1, 720), F(1, 5040)]
# sinh(zx)/z, coefficient of z^n x^(n+1)
K3_PPLUS_TILDE = [F(1, 1), F(0, 1), F(1, 6), F(0, 1), F(1, 120), F(0, 1), F(1, 5040)]
# e^{-zx}, coefficient of z^n x^n
EXP_MINUS = [F(1, 1), F(-1, 1), F(1, 2), F(-1, 6), F(1, 24), F(-1, 120), F(1, 720)]
# 2(e^{zx} - 1)/z, coefficient of z^n x^(n+1)
M2_PMINUS = [F(2, 1), F(1, 1), F(1, 3), F(1, 12), F(1, 60), F(1, 360), F(1, 2520)]
# -e^{zx}, coefficient of z^n x^n
M2_PSQ = [F(-1, 1), F(-1, 1), F(-1, 2), F(-1, 6), F(-1, 24), F(-1, 120), F(-1, 720)]
# sinh(zx/2)/(z/2), coefficient of z^n x^(n+1)
WPLUS_J3 = [F(1, 1), F(0, 1), F(1, 24), F(0, 1), F(1, 1920), F(0, 1), F(1, 322560)]
# e^{zx/2}, coefficient of z^n x^n
EXP_HALF = [F(1, 1), F(1, 2), F(1, 8), F(1, 48), F(1, 384), F(1, 3840), F(1, 46080)]


def power_family(coeffs, base, shift=0, tail=()):
    """``{(base*(n+shift) + tail): z^n coefficient}`` as a names -> list map."""
    out = {}
    for n, c in enumerate(coeffs):
        if c:
            word = (base,) * (n + shift) + tuple(tail)
            out.setdefault(word, [F(0)] * len(coeffs))[n] = c
    return out
