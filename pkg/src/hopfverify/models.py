"""Constructors for the four Poincaré presentations, the basis-change maps,
the Casimirs and the universal R-matrix of the null-plane deformation.

Every formula is assembled in a :class:`FreeAlgebra` of slightly higher
order (so that exact divisions by the deformation parameter keep full
accuracy) and then normal-ordered into the presentation's algebra.
"""
from __future__ import annotations

import itertools
from functools import cached_property

from .hopfdef import CheckResult, Failure, HopfPresentation, run_check
from .ncpoly import (
    AlgebraMorphism,
    Element,
    FreeAlgebra,
    NCAlgebra,
    exp_element,
)
from .scalars import Rational, ZSeries
from .tensorspace import TensorElement, apply_on_leg, embed, flip, tensor, tensor_exp

__all__ = [
    "NULL_PLANE",
    "KINEMATICAL",
    "LORENTZ",
    "TRANSLATIONS",
    "tilde_names",
    "build_classical",
    "build_tilde",
    "build_bicross",
    "build_kinematical",
    "build_kinematical_map",
    "build_kinematical_inverse",
    "build_basis_change",
    "build_inverse",
    "build_mass_casimir",
    "build_pl_components",
    "build_pl_square",
    "build_tilde_pl_plus",
    "build_rmatrix",
    "build_rmatrix_inverse",
    "rmatrix_factors",
    "ModelRegistry",
    "check_hopf_isomorphism",
    "check_morphism_roundtrip",
    "check_centrality",
    "check_intertwining",
    "check_qybe",
    "check_triangularity",
    "check_rmatrix_inverse",
    "check_classical_limits",
    "check_truncation_coherence",
]

TRANSLATIONS = ("P+", "P1", "P2", "P-")
LORENTZ = ("E1", "E2", "J3", "K3", "F1", "F2")
NULL_PLANE = TRANSLATIONS + LORENTZ
KINEMATICAL = ("H", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3")
TILDE = "~"
# headroom for exact divisions by z inside formulas
_SLACK = 2


def tilde_names(names=NULL_PLANE) -> tuple[str, ...]:
    return tuple(n + TILDE for n in names)


def _alphabet(names, lorentz):
    return [(n, 1 if n.rstrip(TILDE) in lorentz else 0) for n in names]


def _eps(i: int, j: int, k: int = 3) -> int:
    return {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (2, 1, 3): -1, (1, 3, 2): -1, (3, 2, 1): -1}.get(
        (i, j, k), 0
    )


class _Formulas:
    """Free-algebra workspace with the P+ series used throughout."""

    def __init__(self, names, order, param, suffix=""):
        self.F = FreeAlgebra(_alphabet(names, LORENTZ), order + _SLACK, param)
        self.s = suffix
        self.z = self.F.z()
        self.one = self.F.one()

    def __getitem__(self, name):
        return self.F.gen(name + self.s)

    def exp_pp(self, c) -> Element:
        """exp(c * z * P+)."""
        return exp_element(self.z * self["P+"] * Rational(c))

    def sinh_over(self, c=1) -> Element:
        """sinh(c z P+) / (c z)."""
        return ((self.exp_pp(c) - self.exp_pp(-c)) / 2).div_z() / Rational(c)

    def cosh(self, c=1) -> Element:
        return (self.exp_pp(c) + self.exp_pp(-c)) / 2


def _bracket_dict(pairs: dict) -> dict:
    return {k: v for k, v in pairs.items() if not v.is_zero()}


def _lorentz_brackets(f: _Formulas, jcosh=None) -> dict:
    """Null-plane Lorentz brackets; ``jcosh`` multiplies J3 in [E_i, F_j]."""
    b = {}
    E = {1: f["E1"], 2: f["E2"]}
    Fg = {1: f["F1"], 2: f["F2"]}
    for i in (1, 2):
        j = 3 - i
        b[("J3", f"E{i}")] = -_eps(i, j) * E[j]
        b[("J3", f"F{i}")] = -_eps(i, j) * Fg[j]
        for jj in (1, 2):
            jpart = f["J3"] if jcosh is None else f["J3"] * jcosh
            b[(f"E{i}", f"F{jj}")] = (f["K3"] if i == jj else f.F.zero()) + _eps(i, jj) * jpart
    return b


def _finish(brackets: dict, suffix: str) -> dict:
    return _bracket_dict({(x + suffix, y + suffix): v for (x, y), v in brackets.items()})


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


def _primitive_structure(alg: NCAlgebra):
    cop = {n: tensor(alg.gen(n), alg.one()) + tensor(alg.one(), alg.gen(n)) for n in alg.names}
    counit = {n: ZSeries((), alg.order) for n in alg.names}
    anti = {n: -alg.gen(n) for n in alg.names}
    return cop, counit, anti


def classical_brackets(f: _Formulas) -> dict:
    b = _lorentz_brackets(f)
    for i in (1, 2):
        j = 3 - i
        b[("K3", f"E{i}")] = f[f"E{i}"]
        b[("K3", f"F{i}")] = -f[f"F{i}"]
        b[("J3", f"P{i}")] = -_eps(i, j) * f[f"P{j}"]
        b[(f"E{i}", f"P{i}")] = f["P+"]
        b[(f"E{i}", "P-")] = f[f"P{i}"]
        b[(f"F{i}", f"P{i}")] = f["P-"]
        b[(f"F{i}", "P+")] = f[f"P{i}"]
    b[("K3", "P+")] = f["P+"]
    b[("K3", "P-")] = -f["P-"]
    return b


def build_classical(order: int = 6, fuel: int | None = None) -> HopfPresentation:
    """Undeformed null-plane Poincaré algebra with primitive coproduct."""
    f = _Formulas(NULL_PLANE, order, "z")
    alg = NCAlgebra(
        _alphabet(NULL_PLANE, LORENTZ),
        _finish(classical_brackets(f), ""),
        order,
        "z",
        "classical",
        **({"fuel": fuel} if fuel else {}),
    )
    return HopfPresentation("classical", alg, *_primitive_structure(alg))


def kinematical_brackets(f: _Formulas) -> dict:
    b = {}
    for i, j in itertools.permutations((1, 2, 3), 2):
        k = 6 - i - j
        e = _eps(i, j, k)
        if i < j:
            b[(f"J{i}", f"J{j}")] = -e * f[f"J{k}"]
            b[(f"K{i}", f"K{j}")] = e * f[f"J{k}"]
        b[(f"J{i}", f"K{j}")] = -e * f[f"K{k}"]
        b[(f"J{i}", f"P{j}")] = -e * f[f"P{k}"]
    for i in (1, 2, 3):
        b[(f"K{i}", f"P{i}")] = f["H"]
        b[(f"K{i}", "H")] = f[f"P{i}"]
    return b


def build_kinematical(order: int = 6, fuel: int | None = None) -> HopfPresentation:
    """Poincaré algebra in the energy/momentum/boost/rotation basis."""
    alphabet = [(n, 1 if n[0] in "JK" else 0) for n in KINEMATICAL]
    f = _Formulas(KINEMATICAL, order, "z")
    f.F = FreeAlgebra(alphabet, order + _SLACK, "z")
    alg = NCAlgebra(
        alphabet, _bracket_dict(kinematical_brackets(f)), order, "z", "kinematical",
        **({"fuel": fuel} if fuel else {}),
    )
    return HopfPresentation("kinematical", alg, *_primitive_structure(alg))


def tilde_brackets(f: _Formulas) -> dict:
    S = f.sinh_over(1)
    C = f.cosh(1)
    sinh = S * f.z
    z = f.z
    W = f["E1"] * f["P2"] - f["E2"] * f["P1"] + f["J3"] * S
    b = _lorentz_brackets(f, jcosh=C)
    b[("K3", "P+")] = S
    b[("K3", "P-")] = -f["P-"] * C
    for i in (1, 2):
        j = 3 - i
        b[("K3", f"E{i}")] = f[f"E{i}"] * C
        b[("J3", f"P{i}")] = -_eps(i, j) * f[f"P{j}"]
        b[(f"E{i}", f"P{i}")] = S
        b[(f"F{i}", f"P{i}")] = f["P-"] * C
        b[("P+", f"F{i}")] = -f[f"P{i}"]
        b[("P-", f"E{i}")] = -f[f"P{i}"]
    b[("K3", "F1")] = -f["F1"] * C + z * f["E1"] * f["P-"] * sinh - z * z * f["P2"] * W
    b[("K3", "F2")] = -f["F2"] * C + z * f["E2"] * f["P-"] * sinh + z * z * f["P1"] * W
    b[("F1", "F2")] = z * z * f["P-"] * W + z * f["P-"] * f["J3"] * sinh
    return b


def tilde_pl_plus(f: _Formulas) -> Element:
    """Deformed Pauli–Lubanski component W+ in the tilde basis (free form)."""
    return f["E1"] * f["P2"] - f["E2"] * f["P1"] + f["J3"] * f.sinh_over(1)


def build_tilde(order: int = 6, antipode_exponent: int = 3, fuel: int | None = None) -> HopfPresentation:
    """Original null-plane deformation (tilde generators, parameter ``zt``).

    The antipode is conjugation by ``exp(antipode_exponent * zt * P+~)``;
    the default 3 is the value that passes.  When the exponent is 3 an
    exponent-1 table is attached as a diagnostic variant.
    """
    names = tilde_names()
    f = _Formulas(names, order, "zt", TILDE)
    alg = NCAlgebra(
        _alphabet(names, LORENTZ),
        _finish(tilde_brackets(f), TILDE),
        order,
        "zt",
        "tilde",
        **({"fuel": fuel} if fuel else {}),
    )
    g = alg.gens()
    one = alg.one()
    em = alg.normal_order(f.exp_pp(-1))
    ep = alg.normal_order(f.exp_pp(1))
    z = alg.z()
    cop = {}
    for n in ("P+", "E1", "E2", "J3"):
        cop[n + TILDE] = tensor(g[n + TILDE], one) + tensor(one, g[n + TILDE])
    for n in ("P-", "P1", "P2"):
        cop[n + TILDE] = tensor(em, g[n + TILDE]) + tensor(g[n + TILDE], ep)

    def deformed(X, pairs):
        t = tensor(em, g[X]) + tensor(g[X], ep)
        for sign, A, B in pairs:
            t = t + sign * (tensor(z * em * g[A], g[B]) - tensor(z * g[B], g[A] * ep))
        return t

    P1, P2, Pm, E1, E2, J3 = (n + TILDE for n in ("P1", "P2", "P-", "E1", "E2", "J3"))
    cop["F1~"] = deformed("F1~", [(1, E1, Pm), (1, J3, P2)])
    cop["F2~"] = deformed("F2~", [(1, E2, Pm), (-1, J3, P1)])
    cop["K3~"] = deformed("K3~", [(1, E1, P1), (1, E2, P2)])
    counit = {n: ZSeries((), order) for n in names}

    def conj_antipode(c):
        a = alg.normal_order(f.exp_pp(c))
        b = alg.normal_order(f.exp_pp(-c))
        return {n: -(a * g[n] * b) for n in names}

    variants = {}
    if antipode_exponent != 1:
        variants["exponent 1"] = conj_antipode(1)
    return HopfPresentation(
        "tilde", alg, cop, counit, conj_antipode(antipode_exponent), variants
    )


def bicross_brackets(f: _Formulas) -> dict:
    e = f.exp_pp(-1)
    z = f.z
    q = (f.one - e).div_z()
    sq = f["P1"] * f["P1"] + f["P2"] * f["P2"]
    b = _lorentz_brackets(f)
    b[("K3", "P+")] = q
    b[("K3", "P-")] = -f["P-"] - z / 2 * sq
    for i in (1, 2):
        j = 3 - i
        b[("K3", f"E{i}")] = f[f"E{i}"]
        b[("K3", f"F{i}")] = -f[f"F{i}"]
        b[("K3", f"P{i}")] = (e - f.one) * f[f"P{i}"]
        b[("J3", f"P{i}")] = -_eps(i, j) * f[f"P{j}"]
        b[(f"E{i}", "P-")] = f[f"P{i}"]
        b[(f"F{i}", "P+")] = f[f"P{i}"]
        b[(f"F{i}", "P-")] = -z * f[f"P{i}"] * f["P-"]
        for jj in (1, 2):
            rhs = -z * f[f"P{i}"] * f[f"P{jj}"]
            if i == jj:
                b[(f"E{i}", f"P{jj}")] = q
                rhs = rhs + e * f["P-"] + z / 2 * sq
            b[(f"F{i}", f"P{jj}")] = rhs
    return b


def build_bicross(order: int = 6, fuel: int | None = None) -> HopfPresentation:
    """The deformation in the bicrossproduct basis (parameter ``z``)."""
    f = _Formulas(NULL_PLANE, order, "z")
    alg = NCAlgebra(
        _alphabet(NULL_PLANE, LORENTZ),
        _finish(bicross_brackets(f), ""),
        order,
        "z",
        "bicross",
        **({"fuel": fuel} if fuel else {}),
    )
    return _bicross_hopf(alg, f)


def _bicross_hopf(alg: NCAlgebra, f: _Formulas) -> HopfPresentation:
    g = alg.gens()
    one = alg.one()
    z = alg.z()
    e = alg.normal_order(f.exp_pp(-1))
    einv = alg.normal_order(f.exp_pp(1))
    cop = {}
    anti = {}
    for n in ("P+", "E1", "E2", "J3"):
        cop[n] = tensor(g[n], one) + tensor(one, g[n])
        anti[n] = -g[n]
    for n in ("P-", "P1", "P2"):
        cop[n] = tensor(e, g[n]) + tensor(g[n], one)
        anti[n] = -(einv * g[n])
    cop["F1"] = (
        tensor(e, g["F1"]) + tensor(g["F1"], one)
        - tensor(z * g["P-"], g["E1"]) - tensor(z * g["P2"], g["J3"])
    )
    cop["F2"] = (
        tensor(e, g["F2"]) + tensor(g["F2"], one)
        - tensor(z * g["P-"], g["E2"]) + tensor(z * g["P1"], g["J3"])
    )
    cop["K3"] = (
        tensor(e, g["K3"]) + tensor(g["K3"], one)
        - tensor(z * g["P1"], g["E1"]) - tensor(z * g["P2"], g["E2"])
    )
    anti["F1"] = -(einv * (g["F1"] + z * g["P-"] * g["E1"] + z * g["P2"] * g["J3"]))
    anti["F2"] = -(einv * (g["F2"] + z * g["P-"] * g["E2"] - z * g["P1"] * g["J3"]))
    anti["K3"] = -(einv * (g["K3"] + z * g["P1"] * g["E1"] + z * g["P2"] * g["E2"]))
    counit = {n: ZSeries((), alg.order) for n in alg.names}
    return HopfPresentation(alg.label or "bicross", alg, cop, counit, anti)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


def build_kinematical_map(target: NCAlgebra) -> AlgebraMorphism:
    """Null-plane generators written in the kinematical basis."""
    h = target.gens()
    images = {
        "P+": (h["H"] + h["P3"]) / 2,
        "P-": h["H"] - h["P3"],
        "E1": (h["K1"] + h["J2"]) / 2,
        "F1": h["K1"] - h["J2"],
        "F2": h["K2"] + h["J1"],
        "E2": (h["K2"] - h["J1"]) / 2,
        "P1": h["P1"],
        "P2": h["P2"],
        "K3": h["K3"],
        "J3": h["J3"],
    }
    return AlgebraMorphism(NULL_PLANE, target, images, 1, "kinematical")


def build_kinematical_inverse(target: NCAlgebra) -> AlgebraMorphism:
    """Kinematical generators written in the null-plane basis."""
    g = target.gens()
    images = {
        "H": g["P+"] + g["P-"] / 2,
        "P3": g["P+"] - g["P-"] / 2,
        "K1": g["E1"] + g["F1"] / 2,
        "J2": g["E1"] - g["F1"] / 2,
        "K2": g["E2"] + g["F2"] / 2,
        "J1": g["F2"] / 2 - g["E2"],
        "P1": g["P1"],
        "P2": g["P2"],
        "K3": g["K3"],
        "J3": g["J3"],
    }
    return AlgebraMorphism(KINEMATICAL, target, images, 1, "kinematical^-1")


def build_basis_change(tilde: NCAlgebra) -> AlgebraMorphism:
    """Bicrossproduct generators as tilde expressions (z = 2 zt)."""
    f = _Formulas(tilde.names, tilde.order, "zt", TILDE)
    z = f.z
    em = f.exp_pp(-1)
    images = {
        "P+": f["P+"],
        "E1": f["E1"],
        "E2": f["E2"],
        "J3": f["J3"],
        "P-": em * f["P-"],
        "P1": em * f["P1"],
        "P2": em * f["P2"],
        "F1": em * (f["F1"] - z * f["E1"] * f["P-"] - z * f["J3"] * f["P2"]),
        "F2": em * (f["F2"] - z * f["E2"] * f["P-"] + z * f["J3"] * f["P1"]),
        "K3": em * (f["K3"] - z * f["E1"] * f["P1"] - z * f["E2"] * f["P2"]),
    }
    return AlgebraMorphism(NULL_PLANE, tilde, images, 2, "basis_change")


def build_inverse(bicross: NCAlgebra) -> AlgebraMorphism:
    """Tilde generators as bicrossproduct expressions (zt = z/2)."""
    f = _Formulas(bicross.names, bicross.order, "z")
    z = f.z
    eh = f.exp_pp(Rational(1, 2))
    images = {
        "P+": f["P+"],
        "E1": f["E1"],
        "E2": f["E2"],
        "J3": f["J3"],
        "P-": eh * f["P-"],
        "P1": eh * f["P1"],
        "P2": eh * f["P2"],
        "F1": eh * (f["F1"] + z * (f["E1"] * f["P-"] + f["J3"] * f["P2"]) / 2),
        "F2": eh * (f["F2"] + z * (f["E2"] * f["P-"] - f["J3"] * f["P1"]) / 2),
        "K3": eh * (f["K3"] + z * (f["E1"] * f["P1"] + f["E2"] * f["P2"]) / 2),
    }
    return AlgebraMorphism(
        tilde_names(), bicross, {k + TILDE: v for k, v in images.items()}, Rational(1, 2), "inverse"
    )


# ---------------------------------------------------------------------------
# distinguished elements
# ---------------------------------------------------------------------------


def build_mass_casimir(bicross: NCAlgebra) -> Element:
    f = _Formulas(bicross.names, bicross.order, "z")
    ep = f.exp_pp(1)
    m2 = 2 * f["P-"] * (ep - f.one).div_z() - (f["P1"] * f["P1"] + f["P2"] * f["P2"]) * ep
    return bicross.normal_order(m2)


def build_pl_components(bicross: NCAlgebra) -> dict[str, Element]:
    """W13, W23, W- and W+ of the deformed Pauli–Lubanski vector."""
    f = _Formulas(bicross.names, bicross.order, "z")
    z = f.z
    ep = f.exp_pp(1)
    q = (ep - f.one).div_z()
    P = {1: f["P1"], 2: f["P2"]}
    E = {1: f["E1"], 2: f["E2"]}
    Fg = {1: f["F1"], 2: f["F2"]}
    EP = f["E1"] * f["P1"] + f["E2"] * f["P2"]
    out = {}
    for i in (1, 2):
        w = (
            f["K3"] * P[i] * ep
            + E[i] * f["P-"]
            - Fg[i] * q
            + z / 2 * EP * P[i] * ep
            + (-1) ** i * f["J3"] * P[3 - i] * (ep - f.one) / 2
        )
        out[f"W{i}3"] = bicross.normal_order(w)
    cross = f["E1"] * f["P2"] - f["E2"] * f["P1"]
    wm = (
        (f["F1"] * f["P2"] - f["F2"] * f["P1"]) * ep
        + f["J3"] * f["P-"] * (ep + f.one) / 2
        + z / 2 * cross * f["P-"] * ep
        + z / 2 * f["J3"] * (f["P1"] * f["P1"] + f["P2"] * f["P2"]) * ep
    )
    out["W-"] = bicross.normal_order(wm)
    wp = cross * f.exp_pp(Rational(1, 2)) + f["J3"] * f.sinh_over(Rational(1, 2))
    out["W+"] = bicross.normal_order(wp)
    return out


def build_pl_square(bicross: NCAlgebra) -> Element:
    w = build_pl_components(bicross)
    m2 = build_mass_casimir(bicross)
    f = _Formulas(bicross.names, bicross.order, "z")
    ch = bicross.normal_order(f.cosh(Rational(1, 2)))
    z2 = bicross.z(2)
    return (
        w["W13"] * w["W13"]
        + w["W23"] * w["W23"]
        + ch * (w["W+"] * w["W-"] + w["W-"] * w["W+"])
        - z2 * m2 * w["W+"] * w["W+"] / 4
    )


def build_tilde_pl_plus(tilde: NCAlgebra) -> Element:
    f = _Formulas(tilde.names, tilde.order, "zt", TILDE)
    return tilde.normal_order(tilde_pl_plus(f))


def rmatrix_factors(bicross: NCAlgebra) -> list[TensorElement]:
    """Exponents of the six factors of the universal R-matrix, in order."""
    g = bicross.gens()
    z = bicross.z()
    f = _Formulas(bicross.names, bicross.order, "z")
    ep = bicross.normal_order(f.exp_pp(1))
    return [
        tensor(z * g["E2"], ep * g["P2"]),
        tensor(z * g["E1"], ep * g["P1"]),
        -tensor(z * g["P+"], ep * g["K3"]),
        tensor(z * ep * g["K3"], g["P+"]),
        -tensor(z * ep * g["P1"], g["E1"]),
        -tensor(z * ep * g["P2"], g["E2"]),
    ]


def build_rmatrix(bicross: NCAlgebra) -> TensorElement:
    r = TensorElement.one((bicross, bicross))
    for t in rmatrix_factors(bicross):
        r = r * tensor_exp(t)
    return r


def build_rmatrix_inverse(bicross: NCAlgebra) -> TensorElement:
    r = TensorElement.one((bicross, bicross))
    for t in reversed(rmatrix_factors(bicross)):
        r = r * tensor_exp(-t)
    return r


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


class ModelRegistry:
    """All presentations, maps and distinguished elements, built once per truncation order."""

    def __init__(self, order: int = 6, fuel: int | None = None):
        self.order = order
        self.fuel = fuel

    @cached_property
    def classical(self) -> HopfPresentation:
        return build_classical(self.order, self.fuel)

    @cached_property
    def kinematical(self) -> HopfPresentation:
        return build_kinematical(self.order, self.fuel)

    @cached_property
    def tilde(self) -> HopfPresentation:
        return build_tilde(self.order, fuel=self.fuel)

    @cached_property
    def bicross(self) -> HopfPresentation:
        return build_bicross(self.order, self.fuel)

    def presentation(self, name: str) -> HopfPresentation:
        if name not in ("classical", "kinematical", "tilde", "bicross"):
            raise KeyError(f"unknown presentation {name!r}")
        return getattr(self, name)

    @cached_property
    def basis_change(self) -> AlgebraMorphism:
        return build_basis_change(self.tilde.algebra)

    @cached_property
    def inverse(self) -> AlgebraMorphism:
        return build_inverse(self.bicross.algebra)

    @cached_property
    def kinematical_map(self) -> AlgebraMorphism:
        return build_kinematical_map(self.kinematical.algebra)

    @cached_property
    def kinematical_inverse(self) -> AlgebraMorphism:
        return build_kinematical_inverse(self.classical.algebra)

    @cached_property
    def mass_casimir(self) -> Element:
        return build_mass_casimir(self.bicross.algebra)

    @cached_property
    def pl_components(self) -> dict[str, Element]:
        return build_pl_components(self.bicross.algebra)

    @cached_property
    def pl_square(self) -> Element:
        return build_pl_square(self.bicross.algebra)

    @cached_property
    def tilde_pl_plus(self) -> Element:
        return build_tilde_pl_plus(self.tilde.algebra)

    @cached_property
    def rmatrix(self) -> TensorElement:
        return build_rmatrix(self.bicross.algebra)

    @cached_property
    def rmatrix_inverse(self) -> TensorElement:
        return build_rmatrix_inverse(self.bicross.algebra)

    def named_elements(self) -> dict[str, Element]:
        """Elements addressable by name from the CLI (bicross basis)."""
        out = {"M2": self.mass_casimir, "W2": self.pl_square}
        for k, v in self.pl_components.items():
            out[k.replace("+", "p").replace("-", "m")] = v
        return out


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def check_morphism_roundtrip(reg: ModelRegistry) -> CheckResult:
    """inverse∘basis_change and basis_change∘inverse fix every generator;
    the kinematical change of basis round-trips as well."""

    def body(res: CheckResult):
        ba, ma = reg.basis_change, reg.inverse
        bic, til = reg.bicross.algebra, reg.tilde.algebra
        for n in bic.names:
            res.cases += 1
            r = ma(ba(bic.gen(n))) - bic.gen(n)
            if r:
                res.failures.append(Failure(f"inverse(basis_change({n}))", r))
        for n in til.names:
            res.cases += 1
            r = ba(ma(til.gen(n))) - til.gen(n)
            if r:
                res.failures.append(Failure(f"basis_change(inverse({n}))", r))
        km, ki = reg.kinematical_map, reg.kinematical_inverse
        cl, kin = reg.classical.algebra, reg.kinematical.algebra
        for n in cl.names:
            res.cases += 1
            r = ki(km(cl.gen(n))) - cl.gen(n)
            if r:
                res.failures.append(Failure(f"kinematical roundtrip {n}", r))
        for n in kin.names:
            res.cases += 1
            r = km(ki(kin.gen(n))) - kin.gen(n)
            if r:
                res.failures.append(Failure(f"kinematical roundtrip {n}", r))
        for x, y in itertools.combinations(cl.names, 2):
            res.cases += 1
            gx, gy = cl.gen(x), cl.gen(y)
            r = km(gx * gy - gy * gx) - (km(gx) * km(gy) - km(gy) * km(gx))
            if r:
                res.failures.append(Failure(f"kinematical bracket ({x},{y})", r))

    return run_check("morphism_roundtrip", "bicross/tilde", reg.order, body)


def _pull_tensor(m: AlgebraMorphism, t: TensorElement) -> TensorElement:
    """Apply ``m`` leg-wise; the parameter relation is applied once per term."""
    K = m.target.order
    s = m.param_scale
    acc: dict = {}
    for (ws, k), c in t.terms.items():
        imgs = [m._word_image(w) for w in ws]
        coef = c * s**k
        partial = {((), k): coef}
        for img in imgs:
            nxt: dict = {}
            for (us, kk), d in partial.items():
                for (v, e), f in img.items():
                    if kk + e <= K:
                        key = (us + (v,), kk + e)
                        nxt[key] = nxt.get(key, 0) + d * f
            partial = nxt
        for key, d in partial.items():
            acc[key] = acc.get(key, 0) + d
    legs = (m.target,) * t.arity
    return TensorElement(legs, {t: c for t, c in acc.items() if c})


def check_hopf_isomorphism(reg: ModelRegistry) -> CheckResult:
    """The basis change carries the tilde Hopf structure onto the bicross one.

    For each bicross generator X with tilde image φ(X): brackets
    [φX, φY], coproducts Δ̃(φX) and antipodes γ̃(φX) are pulled back with the
    inverse map and compared with the bicross tables.
    """

    def body(res: CheckResult):
        ba, ma = reg.basis_change, reg.inverse
        tp, bp = reg.tilde, reg.bicross
        names = bp.algebra.names
        img = {n: ba(bp.gen(n)) for n in names}
        for x, y in itertools.combinations(names, 2):
            res.cases += 1
            lhs = ma(img[x] * img[y] - img[y] * img[x])
            rhs = bp.gen(x) * bp.gen(y) - bp.gen(y) * bp.gen(x)
            if lhs != rhs:
                res.failures.append(Failure(f"bracket ({x},{y})", lhs - rhs))
        for n in names:
            res.cases += 1
            d = _pull_tensor(ma, tp.coproduct_of(img[n]))
            if d != bp.coproduct[n]:
                res.failures.append(Failure(f"coproduct {n}", d - bp.coproduct[n]))
        antipode_fail = []
        for n in names:
            res.cases += 1
            a = ma(tp.antipode_of(img[n]))
            if a != bp.antipode[n]:
                antipode_fail.append(Failure(f"antipode {n}", a - bp.antipode[n]))
        res.failures.extend(antipode_fail)
        if antipode_fail and tp.antipode_variants:
            for label, table in tp.antipode_variants.items():
                alt = tp.with_antipode(table)
                bad = [n for n in names if ma(alt.antipode_of(img[n])) != bp.antipode[n]]
                verdict = "matches" if not bad else f"differs on {bad}"
                res.notes.append(f"tilde antipode variant '{label}' {verdict} after transport")

    return run_check("hopf_isomorphism", "tilde->bicross", reg.order, body)


def check_centrality(c: Element, p: HopfPresentation, label: str = "casimir") -> CheckResult:
    def body(res: CheckResult):
        for n in p.algebra.names:
            res.cases += 1
            g = p.gen(n)
            r = c * g - g * c
            if r:
                res.failures.append(Failure(f"[{label},{n}]", r))

    return run_check(f"centrality[{label}]", p.name, p.order, body)


def check_rmatrix_inverse(reg: ModelRegistry) -> CheckResult:
    def body(res: CheckResult):
        R, Ri = reg.rmatrix, reg.rmatrix_inverse
        one = TensorElement.one(R.legs)
        for label, prod in (("R·R^-1", R * Ri), ("R^-1·R", Ri * R)):
            res.cases += 1
            if prod != one:
                res.failures.append(Failure(label, prod - one))

    return run_check("rmatrix_inverse", "bicross", reg.order, body)


def check_intertwining(reg: ModelRegistry) -> CheckResult:
    """R Δ(X) = flip(Δ(X)) R for every generator."""

    def body(res: CheckResult):
        bp = reg.bicross
        R = reg.rmatrix
        for n in bp.algebra.names:
            res.cases += 1
            d = bp.coproduct[n]
            r = R * d - flip(d) * R
            if r:
                res.failures.append(Failure(n, r))

    return run_check("intertwining", "bicross", reg.order, body)


def check_triangularity(reg: ModelRegistry) -> CheckResult:
    def body(res: CheckResult):
        res.cases = 1
        r = flip(reg.rmatrix) - reg.rmatrix_inverse
        if r:
            res.failures.append(Failure("flip(R) - R^-1", r))

    return run_check("triangularity", "bicross", reg.order, body)


def check_qybe(reg: ModelRegistry) -> CheckResult:
    """R12 R13 R23 = R23 R13 R12, multiplied factor by factor."""

    def body(res: CheckResult):
        alg = reg.bicross.algebra
        factors = rmatrix_factors(alg)
        exps = [tensor_exp(t) for t in factors]

        def product(order):
            acc = TensorElement.one((alg, alg, alg))
            for legs in order:
                for e in exps:
                    acc = acc * embed(e, legs)
            return acc

        res.cases = 1
        r = product(("12", "13", "23")) - product(("23", "13", "12"))
        if r:
            res.failures.append(Failure("R12R13R23 - R23R13R12", r))

    return run_check("qybe", "bicross", reg.order, body)


def _strip(name: str) -> str:
    return name[:-1] if name.endswith(TILDE) else name


def check_classical_limits(reg: ModelRegistry) -> CheckResult:
    """Order-0 parts of the deformed tables are the classical ones; the mass
    Casimir reduces to 2 P- P+ - P1^2 - P2^2 and the R-matrix to 1 ⊗ 1."""

    def body(res: CheckResult):
        cl = reg.classical
        cl_br = {k: v.terms for k, v in cl.algebra.bracket_table().items()}
        for p in (reg.tilde, reg.bicross):
            alg = p.algebra
            got = {}
            for (x, y), v in alg.bracket_table().items():
                c = v.classical_part()
                if c:
                    got[(_strip(x), _strip(y))] = c.terms
            for key in sorted(set(got) | set(cl_br)):
                res.cases += 1
                if got.get(key) != cl_br.get(key):
                    res.failures.append(
                        Failure(f"{p.name} [{key[0]},{key[1]}] at z^0", Element(alg, got.get(key, {})))
                    )
            for n in alg.names:
                res.cases += 2
                m = _strip(n)
                if p.coproduct[n].classical_part().terms != cl.coproduct[m].terms:
                    res.failures.append(Failure(f"{p.name} coproduct {n} at z^0", p.coproduct[n].classical_part()))
                if p.antipode[n].classical_part().terms != cl.antipode[m].terms:
                    res.failures.append(Failure(f"{p.name} antipode {n} at z^0", p.antipode[n].classical_part()))
        bic = reg.bicross.algebra
        g = bic.gens()
        expected = 2 * g["P-"] * g["P+"] - g["P1"] * g["P1"] - g["P2"] * g["P2"]
        res.cases += 1
        m2 = reg.mass_casimir.classical_part()
        if m2 != expected:
            res.failures.append(Failure("M2 at z^0", m2 - expected))
        res.cases += 1
        r0 = reg.rmatrix.classical_part()
        one = TensorElement.one(r0.legs)
        if r0 != one:
            res.failures.append(Failure("R at z^0", r0 - one))

    return run_check("classical_limits", "all", reg.order, body)


def check_truncation_coherence(high: ModelRegistry, order: int) -> CheckResult:
    """Data built at ``order`` equals the data built at ``high.order`` truncated."""
    low = ModelRegistry(order, high.fuel)

    def same(label, a, b, res):
        res.cases += 1
        if a != b:
            res.failures.append(Failure(label))

    def body(res: CheckResult):
        if order > high.order:
            raise ValueError("truncation target exceeds the source order")
        for name in ("classical", "kinematical", "tilde", "bicross"):
            hp, lp = high.presentation(name), low.presentation(name)
            hb = {k: v.truncate(order).terms for k, v in hp.algebra.bracket_table().items()}
            lb = {k: v.terms for k, v in lp.algebra.bracket_table().items()}
            same(f"{name} brackets", {k: v for k, v in hb.items() if v}, lb, res)
            for n in hp.algebra.names:
                same(f"{name} coproduct {n}", hp.coproduct[n].truncate(order).terms, lp.coproduct[n].terms, res)
                same(f"{name} antipode {n}", hp.antipode[n].truncate(order).terms, lp.antipode[n].terms, res)
                same(f"{name} counit {n}", hp.counit[n].truncate(order), lp.counit[n], res)
        for label in ("mass_casimir", "tilde_pl_plus"):
            same(label, getattr(high, label).truncate(order).terms, getattr(low, label).terms, res)
        for k, v in high.pl_components.items():
            same(f"pl {k}", v.truncate(order).terms, low.pl_components[k].terms, res)
        same("rmatrix", high.rmatrix.truncate(order).terms, low.rmatrix.terms, res)
        for mname in ("basis_change", "inverse"):
            hm, lm = getattr(high, mname), getattr(low, mname)
            for n in hm.source_names:
                src_hi = hm.images[n].truncate(order).terms
                same(f"{mname} {n}", src_hi, lm.images[n].terms, res)

    return run_check(f"truncation[{order}]", "all", order, body)
