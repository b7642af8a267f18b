"""The ``.alg`` text format and the expression grammar.

Expressions::

    expr    := tterm (('+' | '-') tterm)*
    tterm   := product ('(x)' product)*
    product := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | exp '(' expr ')' | '(' expr ')' | '[' expr ',' expr ']'

Names are matched longest-first against the active symbol table, so
generator names may contain ``+``, ``-`` and ``~``.  Division is allowed by
a nonzero rational or by the deformation parameter (exactly).

Documents::

    algfile 1
    name bicross
    order 6
    parameter z
    generators
      P+ 0
      E1 1
    macros            # optional, evaluated before the bracket table exists
      W = ...
    brackets
      [K3, P+] = (1 - exp(-z*P+))/z
    coproduct
      P+ = P+ (x) 1 + 1 (x) P+
    counit
      P+ = 0
    antipode
      P+ = -P+
    variant exponent 1   # optional alternative antipode tables
      P+ = -P+
    elements          # optional named elements
      M2 = ...
    end

``#`` starts a comment; a trailing ``\\`` continues a line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .hopfdef import HopfPresentation
from .ncpoly import (
    Algebra,
    Element,
    FreeAlgebra,
    NCAlgebra,
    NonTruncatingExponential,
    exp_element,
)
from .scalars import ONE, Rational, ZSeries
from .tensorspace import TensorElement, retarget, tensor, tensor_exp

__all__ = [
    "AlgfileError",
    "parse_expression",
    "parse_document",
    "print_element",
    "print_document",
    "format_element",
    "format_value",
    "load_fixture",
    "fixture_path",
    "FORMAT_VERSION",
]

FORMAT_VERSION = 1
TENSOR = "(x)"
_SECTIONS = ("generators", "macros", "brackets", "coproduct", "counit", "antipode", "variant", "elements")


class AlgfileError(ValueError):
    """Rejection with a source position."""

    def __init__(self, reason: str, line: int = 1, col: int = 1):
        self.reason = reason
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {reason}")


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT NAME OP TENSOR END
    text: str
    line: int
    col: int


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*[+\-~]*")


def tokenize(src: str, symbols: Iterable[str], line: int = 1, col: int = 1) -> list[Token]:
    syms = sorted(set(symbols) | {"exp"}, key=len, reverse=True)
    toks: list[Token] = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        c = col + i
        if ch.isspace():
            i += 1
            continue
        if src.startswith(TENSOR, i):
            toks.append(Token("TENSOR", TENSOR, line, c))
            i += 3
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("INT", src[i:j], line, c))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            for s in syms:
                if src.startswith(s, i):
                    end = i + len(s)
                    if s[-1].isalnum() and end < n and (src[end].isalnum() or src[end] == "_"):
                        continue
                    toks.append(Token("NAME", s, line, c))
                    i = end
                    break
            else:
                m = _IDENT.match(src, i)
                raise AlgfileError(f"unknown symbol {m.group(0)!r}", line, c)
            continue
        if ch in "+-*/^()[],":
            toks.append(Token("OP", ch, line, c))
            i += 1
            continue
        raise AlgfileError(f"unexpected character {ch!r}", line, c)
    toks.append(Token("END", "", line, col + n))
    return toks


# ---------------------------------------------------------------------------
# evaluator
# ---------------------------------------------------------------------------


def _is_scalar(v) -> bool:
    return isinstance(v, Element) and all(not w for (w, _) in v.terms)


def _scalar_series(v: Element) -> ZSeries:
    K = v.algebra.order
    cs = [0] * (K + 1)
    for (_, k), c in v.terms.items():
        cs[k] = c
    return ZSeries(cs, K)


class _Parser:
    def __init__(self, toks: list[Token], algebra: Algebra, names: Mapping[str, Element | TensorElement]):
        self.toks = toks
        self.pos = 0
        self.alg = algebra
        self.names = names

    def peek(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text:
            raise AlgfileError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t.kind != "END":
            raise AlgfileError(f"unexpected {t.text!r}", t.line, t.col)
        return v

    def expr(self):
        v = self.tterm()
        while self.peek().text in ("+", "-"):
            op = self.take()
            w = self.tterm()
            v = self._add(v, w if op.text == "+" else -w, op)
        return v

    def tterm(self):
        v = self.product()
        while self.peek().kind == "TENSOR":
            op = self.take()
            w = self.product()
            v = self._tensor(v, w, op)
        return v

    def product(self):
        v = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            w = self.unary()
            v = self._mul(v, w, op) if op.text == "*" else self._div(v, w, op)
        return v

    def unary(self):
        t = self.peek()
        if t.text == "-":
            self.take()
            return -self.unary()
        if t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek().text == "^":
            op = self.take()
            t = self.take()
            if t.kind != "INT":
                raise AlgfileError("exponent must be a non-negative integer", t.line, t.col)
            n = int(t.text)
            if isinstance(v, TensorElement):
                acc = TensorElement.one(v.legs)
                for _ in range(n):
                    acc = acc * v
                return acc
            return v**n
        return v

    def atom(self):
        t = self.take()
        if t.kind == "INT":
            return self.alg.scalar(int(t.text))
        if t.kind == "NAME":
            if t.text == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                try:
                    return tensor_exp(arg) if isinstance(arg, TensorElement) else exp_element(arg)
                except NonTruncatingExponential as e:
                    raise AlgfileError(f"non-truncating exponential: {e}", t.line, t.col) from None
            if t.text == self.alg.param:
                return self.alg.z()
            if t.text in self.alg.index:
                return self.alg.gen(t.text)
            v = self.names.get(t.text)
            if v is None:
                raise AlgfileError(f"unknown symbol {t.text!r}", t.line, t.col)
            if isinstance(v, TensorElement):
                return retarget(v, (self.alg,) * v.arity)
            return self.alg.normal_order(v) if v.algebra is not self.alg else v
        if t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.text == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return self._sub(self._mul(a, b, t), self._mul(b, a, t), t)
        raise AlgfileError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)

    # value operations ------------------------------------------------
    def _arity(self, v) -> int:
        return v.arity if isinstance(v, TensorElement) else 1

    def _add(self, a, b, at: Token):
        if self._arity(a) != self._arity(b):
            raise AlgfileError(
                f"arity mismatch: {self._arity(a)} vs {self._arity(b)}", at.line, at.col
            )
        return a + b

    def _sub(self, a, b, at: Token):
        return self._add(a, -b, at)

    def _mul(self, a, b, at: Token):
        ta, tb = isinstance(a, TensorElement), isinstance(b, TensorElement)
        if ta and tb:
            if a.arity != b.arity:
                raise AlgfileError(f"arity mismatch: {a.arity} vs {b.arity}", at.line, at.col)
            return a * b
        if ta or tb:
            s, t = (b, a) if ta else (a, b)
            if not _is_scalar(s):
                raise AlgfileError("cannot multiply a tensor by a non-scalar element", at.line, at.col)
            return t * _scalar_series(s)
        return a * b

    def _div(self, a, b, at: Token):
        if not _is_scalar(b) or not b.terms:
            raise AlgfileError("can only divide by a nonzero rational or by the parameter", at.line, at.col)
        if len(b.terms) == 1:
            ((_, k), c), = b.terms.items()
            try:
                if k == 0:
                    return a * (ONE / c)
                if k == 1:
                    return a.div_z() * (ONE / c)
            except ZeroDivisionError:
                raise AlgfileError("division by the parameter is not exact here", at.line, at.col) from None
        raise AlgfileError("can only divide by a nonzero rational or by the parameter", at.line, at.col)

    def _tensor(self, a, b, at: Token):
        legs_a = list(a.legs) if isinstance(a, TensorElement) else None
        ta = a if legs_a else tensor(a)
        tb = b if isinstance(b, TensorElement) else tensor(b)
        terms = {}
        K = min(ta.order, tb.order)
        for (wa, ka), ca in ta.terms.items():
            for (wb, kb), cb in tb.terms.items():
                if ka + kb <= K:
                    key = (wa + wb, ka + kb)
                    terms[key] = terms.get(key, 0) + ca * cb
        return TensorElement(ta.legs + tb.legs, {k: v for k, v in terms.items() if v})


def _z_divisions(toks: list[Token], param: str) -> int:
    return sum(
        1 for a, b in zip(toks, toks[1:]) if a.text == "/" and b.kind == "NAME" and b.text == param
    ) + sum(1 for a, b in zip(toks, toks[1:]) if a.text == "/" and b.text == "(")


def _working_algebra(target: Algebra, extra: int) -> Algebra:
    if extra == 0:
        return target
    if isinstance(target, NCAlgebra):
        try:
            return target.with_order(target.order + extra)
        except ValueError:
            pass
    spec = [(g.name, g.lorentz_degree) for g in target.generators]
    return FreeAlgebra(spec, target.order + extra, target.param, "scratch")


def _to_target(v, target: Algebra):
    if isinstance(v, TensorElement):
        return retarget(v, (target,) * v.arity)
    return target.normal_order(v) if v.algebra is not target else v


def parse_expression(
    src: str,
    algebra: Algebra,
    names: Mapping[str, Element | TensorElement] | None = None,
    line: int = 1,
    col: int = 1,
):
    """Parse ``src`` into a canonical Element or TensorElement of ``algebra``."""
    names = dict(names or {})
    symbols = set(algebra.names) | set(names) | {algebra.param}
    toks = tokenize(src, symbols, line, col)
    extra = _z_divisions(toks, algebra.param)
    work = _working_algebra(algebra, extra)
    try:
        value = _Parser(toks, work, names).parse()
    except AlgfileError:
        raise
    except (ValueError, ZeroDivisionError, KeyError) as e:
        raise AlgfileError(str(e), line, col) from None
    return _to_target(value, algebra)


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------


def _rat(c) -> str:
    return str(c)


def _power(name: str, n: int) -> str:
    return name if n == 1 else f"{name}^{n}"


def _word_text(alg: Algebra, w: Iterable[int]) -> list[str]:
    out: list[str] = []
    prev, run = None, 0
    for g in w:
        if g == prev:
            run += 1
            continue
        if prev is not None:
            out.append(_power(alg.names[prev], run))
        prev, run = g, 1
    if prev is not None:
        out.append(_power(alg.names[prev], run))
    return out


def _exp_text(alg: Algebra, a) -> str:
    p, base = alg.param, alg.names[0]
    if a == 1:
        inner = p
    elif a == -1:
        inner = f"-{p}"
    else:
        inner = f"{_rat(a)}*{p}"
    return f"exp({inner}*{base})"


def _coef_prefix(c, factors: list[str]) -> str:
    """Coefficient attached to a list of factor strings."""
    if not factors:
        return _rat(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{_rat(c)}*{body}"


def _split_lead(w: tuple) -> tuple[int, tuple]:
    j = 0
    while j < len(w) and w[j] == 0:
        j += 1
    return j, w[j:]


def _factor_group(entries: dict, arity: int, K: int):
    """Try ``c z^m prod_i P^{j_i} exp(a_i z P)``; return (c, m, js, as) or None.

    The order ``m + 1`` fixes the rates, so at least one further order must
    be available to confirm the pattern; otherwise any group would fit.
    """
    m = min(k for (_, k) in entries)
    low = [(js, c) for (js, k), c in entries.items() if k == m]
    if len(low) != 1 or m + 2 > K:
        return None
    js, c = low[0]
    rates = []
    for i in range(arity):
        bumped = tuple(j + (1 if t == i else 0) for t, j in enumerate(js))
        rates.append(entries.get((bumped, m + 1), 0) / c)
    if not any(rates):
        return None
    predicted = {}
    partial = [((0,) * arity, m, c)]
    for i in range(arity):
        nxt = []
        for ns, k, v in partial:
            n, coef = 0, v
            while k + n <= K:
                if coef:
                    nxt.append((ns[:i] + (n,) + ns[i + 1 :], k + n, coef))
                n += 1
                coef = coef * rates[i] / n
                if not rates[i]:
                    break
        partial = nxt
    for ns, k, v in partial:
        key = (tuple(j + n for j, n in zip(js, ns)), k)
        predicted[key] = predicted.get(key, 0) + v
    predicted = {k: v for k, v in predicted.items() if v}
    if predicted != entries:
        return None
    return c, m, js, rates


def _format_terms(legs: tuple, terms: dict) -> str:
    if not terms:
        return "0"
    arity = len(legs)
    alg0 = legs[0]
    K = min(a.order for a in legs)
    groups: dict[tuple, dict] = {}
    for (ws, k), c in terms.items():
        split = [_split_lead(w) for w in ws]
        rest = tuple(r for _, r in split)
        js = tuple(j for j, _ in split)
        groups.setdefault(rest, {})[(js, k)] = c

    def gkey(rest):
        return (sum(len(r) for r in rest), tuple((len(r), r) for r in rest))

    zname = alg0.param
    pieces: list[str] = []
    for rest in sorted(groups, key=gkey):
        entries = groups[rest]
        fact = _factor_group(entries, arity, K)
        if fact is not None:
            c, m, js, rates = fact
            legs_txt = []
            for i in range(arity):
                f: list[str] = []
                if rates[i]:
                    f.append(_exp_text(legs[i], rates[i]))
                if js[i]:
                    f.append(_power(legs[i].names[0], js[i]))
                f.extend(_word_text(legs[i], rest[i]))
                legs_txt.append(f)
            pieces.append(_render(c, m, legs_txt, zname))
            continue
        for (js, k) in sorted(entries, key=lambda t: (t[1], t[0])):
            c = entries[(js, k)]
            legs_txt = []
            for i in range(arity):
                f = []
                if js[i]:
                    f.append(_power(legs[i].names[0], js[i]))
                f.extend(_word_text(legs[i], rest[i]))
                legs_txt.append(f)
            pieces.append(_render(c, k, legs_txt, zname))
    out = " + ".join(pieces)
    return out.replace("+ -", "- ")


def _render(c, zpow: int, legs_txt: list[list[str]], zname: str) -> str:
    first = list(legs_txt[0])
    if zpow:
        first.insert(0, _power(zname, zpow))
    parts = [_coef_prefix(c, first)]
    for f in legs_txt[1:]:
        parts.append("*".join(f) if f else "1")
    return f" {TENSOR} ".join(parts)


def format_element(x: Element | TensorElement) -> str:
    if isinstance(x, TensorElement):
        return _format_terms(x.legs, x.terms)
    return _format_terms((x.algebra,), {((w,), k): c for (w, k), c in x.terms.items()})


print_element = format_element


def format_value(v) -> str | None:
    if v is None:
        return None
    if isinstance(v, (Element, TensorElement)):
        return format_element(v)
    if isinstance(v, ZSeries):
        return v.to_str()
    return str(v)


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------


@dataclass
class _Line:
    text: str
    line: int
    col: int


def _logical_lines(src: str) -> list[_Line]:
    out: list[_Line] = []
    pending: _Line | None = None
    for no, raw in enumerate(src.splitlines(), 1):
        text = raw.split("#", 1)[0].rstrip()
        if pending is not None:
            cont = text.lstrip()
            pending = _Line(pending.text + " " + cont, pending.line, pending.col)
        elif text.strip():
            stripped = text.lstrip()
            pending = _Line(stripped, no, len(text) - len(stripped) + 1)
        else:
            continue
        if pending.text.endswith("\\"):
            pending = _Line(pending.text[:-1].rstrip(), pending.line, pending.col)
            continue
        out.append(pending)
        pending = None
    if pending is not None:
        out.append(pending)
    return out


def _split_def(ln: _Line) -> tuple[str, str, int]:
    if "=" not in ln.text:
        raise AlgfileError("expected 'lhs = expression'", ln.line, ln.col)
    lhs, rhs = ln.text.split("=", 1)
    offset = ln.col + len(lhs) + 1
    while rhs and rhs[0] == " ":
        rhs = rhs[1:]
        offset += 1
    return lhs.strip(), rhs, offset


def parse_document(src: str, order: int | None = None, fuel: int | None = None) -> HopfPresentation:
    """Parse a ``.alg`` document into a ready-to-check presentation.

    ``order`` overrides the truncation order in the header.
    """
    lines = _logical_lines(src)
    if not lines or lines[0].text.split() != ["algfile", str(FORMAT_VERSION)]:
        at = lines[0] if lines else _Line("", 1, 1)
        raise AlgfileError(f"missing header 'algfile {FORMAT_VERSION}'", at.line, at.col)
    header: dict[str, str] = {}
    sections: list[tuple[str, str, _Line, list[_Line]]] = []
    current: list[_Line] | None = None
    ended = False
    for ln in lines[1:]:
        if ended:
            raise AlgfileError("content after 'end'", ln.line, ln.col)
        words = ln.text.split()
        key = words[0]
        if key == "end" and len(words) == 1:
            ended = True
            continue
        if key in ("name", "order", "parameter") and current is None:
            if len(words) != 2:
                raise AlgfileError(f"'{key}' takes one value", ln.line, ln.col)
            if key in header:
                raise AlgfileError(f"duplicate header field {key!r}", ln.line, ln.col)
            header[key] = words[1]
            continue
        if key in _SECTIONS and "=" not in ln.text and (key == "variant" or len(words) == 1):
            label = " ".join(words[1:]) if key == "variant" else ""
            if key == "variant" and not label:
                raise AlgfileError("variant needs a label", ln.line, ln.col)
            if any(s[0] == key and s[1] == label for s in sections):
                raise AlgfileError(f"duplicate section {key!r}", ln.line, ln.col)
            current = []
            sections.append((key, label, ln, current))
            continue
        if current is None:
            raise AlgfileError(f"unexpected line outside a section: {ln.text!r}", ln.line, ln.col)
        current.append(ln)
    for field_ in ("name", "order", "parameter"):
        if field_ not in header:
            raise AlgfileError(f"missing header field {field_!r}", lines[0].line, 1)
    try:
        K = int(header["order"]) if order is None else order
    except ValueError:
        raise AlgfileError("order must be an integer", lines[0].line, 1) from None
    if K < 0:
        raise AlgfileError("order must be non-negative", lines[0].line, 1)
    param = header["parameter"]
    bysec = {(s[0], s[1]): s for s in sections}
    for required in ("generators", "brackets", "coproduct", "counit", "antipode"):
        if (required, "") not in bysec:
            raise AlgfileError(f"missing section {required!r}", lines[-1].line, 1)

    # generators
    gens: list[tuple[str, int]] = []
    for ln in bysec[("generators", "")][3]:
        words = ln.text.split()
        if len(words) not in (1, 2):
            raise AlgfileError("generator line is 'NAME [lorentz_degree]'", ln.line, ln.col)
        deg = 0
        if len(words) == 2:
            if words[1] not in ("0", "1"):
                raise AlgfileError("lorentz degree must be 0 or 1", ln.line, ln.col)
            deg = int(words[1])
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*[+\-~]*", words[0]) or words[0] in ("exp", param):
            raise AlgfileError(f"invalid generator name {words[0]!r}", ln.line, ln.col)
        if any(words[0] == g for g, _ in gens):
            raise AlgfileError(f"duplicate generator {words[0]!r}", ln.line, ln.col)
        gens.append((words[0], deg))
    if not gens:
        raise AlgfileError("no generators declared", bysec[("generators", "")][2].line, 1)
    names = [g for g, _ in gens]

    def free(extra: int) -> FreeAlgebra:
        return FreeAlgebra(gens, K + 2 + extra, param, "scratch")

    # macros: free-level definitions usable in brackets
    macros: dict[str, Element] = {}
    if ("macros", "") in bysec:
        for ln in bysec[("macros", "")][3]:
            lhs, rhs, c = _split_def(ln)
            _check_new_name(lhs, names, macros, ln)
            macros[lhs] = _parse_free(rhs, gens, K, param, macros, ln.line, c)

    brackets: dict[tuple[str, str], Element] = {}
    seen_pairs: set[frozenset] = set()
    for ln in bysec[("brackets", "")][3]:
        lhs, rhs, c = _split_def(ln)
        m = re.fullmatch(r"\[\s*(\S+)\s*,\s*(\S+)\s*\]", lhs)
        if not m:
            raise AlgfileError("bracket entries look like '[X, Y] = expr'", ln.line, ln.col)
        x, y = m.group(1), m.group(2)
        for g in (x, y):
            if g not in names:
                raise AlgfileError(f"undeclared generator {g!r}", ln.line, ln.col)
        if x == y:
            raise AlgfileError(f"bracket of {x} with itself", ln.line, ln.col)
        if frozenset((x, y)) in seen_pairs:
            raise AlgfileError(f"duplicate bracket for ({x}, {y})", ln.line, ln.col)
        seen_pairs.add(frozenset((x, y)))
        v = _parse_free(rhs, gens, K, param, macros, ln.line, c)
        if not v.is_zero():
            brackets[(x, y)] = v
    alg = NCAlgebra(gens, brackets, K, param, header["name"], **({"fuel": fuel} if fuel else {}))

    def table(section: tuple[str, str], kind: str) -> dict:
        out: dict = {}
        for ln in bysec[section][3]:
            lhs, rhs, c = _split_def(ln)
            if lhs not in names:
                raise AlgfileError(f"undeclared generator {lhs!r}", ln.line, ln.col)
            if lhs in out:
                raise AlgfileError(f"duplicate definition for {lhs!r}", ln.line, ln.col)
            v = parse_expression(rhs, alg, macros, ln.line, c)
            if kind == "coproduct":
                if not isinstance(v, TensorElement) or v.arity != 2:
                    raise AlgfileError("coproduct must be an arity-2 tensor", ln.line, c)
            elif kind == "counit":
                if isinstance(v, TensorElement) or not _is_scalar(v):
                    raise AlgfileError("counit must be a scalar series", ln.line, c)
                v = _scalar_series(v)
            elif isinstance(v, TensorElement):
                raise AlgfileError(f"{kind} must be an algebra element", ln.line, c)
            out[lhs] = v
        missing = [n for n in names if n not in out]
        if missing:
            ln = bysec[section][2]
            raise AlgfileError(f"{kind} undefined for {missing}", ln.line, ln.col)
        return out

    cop = table(("coproduct", ""), "coproduct")
    counit = table(("counit", ""), "counit")
    anti = table(("antipode", ""), "antipode")
    variants = {
        label: table((key, label), "antipode") for key, label, _, _ in sections if key == "variant"
    }
    elements: dict[str, Element] = {}
    if ("elements", "") in bysec:
        for ln in bysec[("elements", "")][3]:
            lhs, rhs, c = _split_def(ln)
            _check_new_name(lhs, names, {**macros, **elements}, ln)
            v = parse_expression(rhs, alg, {**macros, **elements}, ln.line, c)
            elements[lhs] = v
    p = HopfPresentation(header["name"], alg, cop, counit, anti, variants, elements)
    return p


def _check_new_name(name: str, gens: list[str], defined: Mapping, ln: _Line):
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise AlgfileError(f"invalid element name {name!r}", ln.line, ln.col)
    if name in gens or name in defined or name == "exp":
        raise AlgfileError(f"duplicate definition for {name!r}", ln.line, ln.col)


def _parse_free(src, gens, K, param, macros, line, col) -> Element:
    spec_names = [g for g, _ in gens]
    toks = tokenize(src, set(spec_names) | set(macros) | {param}, line, col)
    extra = _z_divisions(toks, param)
    work = FreeAlgebra(gens, K + 2 + extra, param, "scratch")
    try:
        v = _Parser(toks, work, macros).parse()
    except AlgfileError:
        raise
    except (ValueError, ZeroDivisionError, KeyError) as e:
        raise AlgfileError(str(e), line, col) from None
    if isinstance(v, TensorElement):
        raise AlgfileError("expected an algebra element, got a tensor", line, col)
    # keep only what is exact at order K+2
    return FreeAlgebra(gens, K + 2, param, "scratch").element(v.terms)


def print_document(p: HopfPresentation) -> str:
    """Serialize a presentation with fully expanded, normal-ordered entries."""
    alg = p.algebra
    out = [f"algfile {FORMAT_VERSION}", f"name {p.name}", f"order {alg.order}", f"parameter {alg.param}"]
    out.append("generators")
    for g in alg.generators:
        out.append(f"  {g.name} {g.lorentz_degree}")
    out.append("brackets")
    for (x, y), v in alg.bracket_table().items():
        out.append(f"  [{x}, {y}] = {format_element(v)}")
    out.append("coproduct")
    for n in alg.names:
        out.append(f"  {n} = {format_element(p.coproduct[n])}")
    out.append("counit")
    for n in alg.names:
        out.append(f"  {n} = {p.counit[n].to_str(alg.param)}")
    out.append("antipode")
    for n in alg.names:
        out.append(f"  {n} = {format_element(p.antipode[n])}")
    for label, tab in p.antipode_variants.items():
        out.append(f"variant {label}")
        for n in alg.names:
            out.append(f"  {n} = {format_element(tab[n])}")
    if p.elements:
        out.append("elements")
        for name, v in p.elements.items():
            out.append(f"  {name} = {format_element(v)}")
    out.append("end")
    return "\n".join(out) + "\n"


def fixture_path(name: str):
    from importlib import resources

    return resources.files("hopfverify") / "data" / f"{name}.alg"


def load_fixture(name: str, order: int | None = None) -> HopfPresentation:
    return parse_document(fixture_path(name).read_text(), order)
