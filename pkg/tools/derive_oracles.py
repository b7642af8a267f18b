"""Independent oracle for the frozen expansion coefficients used in tests.

Uses sympy's commutative series expansion only (no code from hopfverify).
Every quantity below is a series in the parameter whose coefficients multiply
a single monomial in commuting translation generators, so commutative
expansion is sufficient.  Run with ``python3 tools/derive_oracles.py``.
"""
import sympy as sp

z, x = sp.symbols("z x")
K = 6


def coeffs(expr, var_power):
    """Coefficient list c_n for z^n * x^(var_power(n)), n = 0..K."""
    s = sp.series(expr, z, 0, K + 1).removeO().expand()
    return [sp.Rational(s.coeff(z, n).coeff(x, var_power(n))) for n in range(K + 1)]


oracles = {
    # (1 - e^{-z x}) / z : coefficient of z^n x^(n+1)
    "K3_Pplus_bicross": coeffs((1 - sp.exp(-z * x)) / z, lambda n: n + 1),
    # sinh(z x)/z : coefficient of z^n x^(n+1)
    "K3_Pplus_tilde": coeffs(sp.sinh(z * x) / z, lambda n: n + 1),
    # e^{-z x}: coefficient of z^n x^n
    "exp_minus": coeffs(sp.exp(-z * x), lambda n: n),
    # 2 (e^{z x} - 1)/z : coefficient of z^n x^(n+1)   (mass Casimir, P- part)
    "M2_Pminus": coeffs(2 * (sp.exp(z * x) - 1) / z, lambda n: n + 1),
    # -e^{z x}: coefficient of z^n x^n   (mass Casimir, P1^2 and P2^2 parts)
    "M2_Psq": coeffs(-sp.exp(z * x), lambda n: n),
    # sinh(z x / 2)/(z/2): coefficient of z^n x^(n+1)   (W+ , J3 part)
    "Wplus_J3": coeffs(sp.sinh(z * x / 2) / (z / 2), lambda n: n + 1),
    # e^{z x/2}: coefficient of z^n x^n   (W+, E-P parts)
    "exp_half": coeffs(sp.exp(z * x / 2), lambda n: n),
}

if __name__ == "__main__":
    for name, cs in oracles.items():
        print(f"{name} = [{', '.join(f'F({c.p}, {c.q})' for c in cs)}]")
