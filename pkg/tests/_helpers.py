"""Comparisons shared by the algfile and acceptance tests."""


def table_terms(p):
    """Every structure table of a presentation as plain term dictionaries."""
    a = p.algebra
    return {
        "names": a.names,
        "degrees": [g.lorentz_degree for g in a.generators],
        "param": a.param,
        "brackets": {k: v.terms for k, v in a.bracket_table().items()},
        "coproduct": {k: v.terms for k, v in p.coproduct.items()},
        "counit": {k: v.coeffs for k, v in p.counit.items()},
        "antipode": {k: v.terms for k, v in p.antipode.items()},
    }


def table_differences(p, q):
    """Names of the tables on which two presentations differ."""
    a, b = table_terms(p), table_terms(q)
    return [k for k in a if a[k] != b[k]]


def builtin_elements(reg, name):
    """Named elements a shipped fixture is expected to define."""
    if name == "bicross":
        return reg.named_elements()
    if name == "tilde":
        return {"Wtp": reg.tilde_pl_plus}
    if name == "classical":
        g = reg.classical.algebra.gen
        return {"M2": 2 * g("P+") * g("P-") - g("P1") * g("P1") - g("P2") * g("P2")}
    return {}
