"""Polynomial text grammar.

    poly     := ['+'|'-'] term (('+'|'-') term)*
    term     := coeff ('*'? monomial)? | monomial
    monomial := var ('^' nat)? ('*'? var ('^' nat)?)*
    var      := x0..x9 | s | t | u | v | w | z | z0..z9
    coeff    := int ('/' posint)?

Whitespace is ignored.  An optional leading sign is accepted so that matrix
entries such as ``-1`` can be written.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError
from .polys import VAR_ORDER, MultiPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xz]\d|[stuvwz])|(?P<op>[-+*/^])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group("bad") is not None:
            if m.group("bad").isalpha():
                raise ParseError(f"unknown variable starting with {m.group('bad')!r}", m.start("bad"))
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_terms(text: str) -> list[tuple[Fraction, dict]]:
    """Parse into (coefficient, {variable: exponent}) pairs."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def nat():
        k, v, p = take()
        if k != "num":
            raise ParseError("expected a natural number", p)
        return int(v)

    def monomial(first):
        mono: dict = {}
        _, v, _ = first
        e = 1
        if peek()[1] == "^":
            take()
            e = nat()
        mono[v] = mono.get(v, 0) + e
        while True:
            k, v, p = peek()
            if k == "op" and v == "*" and toks[i + 1][0] == "var":
                take()
                continue
            if k != "var":
                break
            take()
            e = 1
            if peek()[1] == "^":
                take()
                e = nat()
            mono[v] = mono.get(v, 0) + e
        return mono

    def term(sign):
        k, v, p = take()
        if k == "num":
            c = Fraction(int(v))
            if peek()[1] == "/":
                take()
                kk, den, pp = take()
                if kk != "num" or int(den) == 0:
                    raise ParseError("expected a positive integer denominator", pp)
                c = c / int(den)
            mono: dict = {}
            k2, v2, _ = peek()
            if k2 == "op" and v2 == "*":
                take()
                k3, v3, p3 = take()
                if k3 != "var":
                    raise ParseError("expected a variable after '*'", p3)
                mono = monomial((k3, v3, p3))
            elif k2 == "var":
                mono = monomial(take())
            return sign * c, mono
        if k == "var":
            return Fraction(sign), monomial((k, v, p))
        raise ParseError("expected a coefficient or variable", p)

    out = []
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    out.append(term(sign))
    while peek()[0] != "end":
        k, v, p = take()
        if k != "op" or v not in "+-":
            raise ParseError(f"expected '+' or '-', found {v!r}", p)
        out.append(term(-1 if v == "-" else 1))
    return out


def infer_variables(texts: Iterable[str]) -> tuple[str, ...]:
    """Canonical variable tuple covering all names used; indexed families are
    filled from index 0 so that x3 implies x0..x3."""
    used: set = set()
    for text in texts:
        for _, mono in parse_terms(text):
            used.update(mono)
    for fam in ("x", "z"):
        idx = [int(v[1:]) for v in used if v.startswith(fam) and len(v) == 2]
        if idx:
            used.update(f"{fam}{j}" for j in range(max(idx) + 1))
    return tuple(v for v in VAR_ORDER if v in used)


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Exact parse of ``text`` into a MultiPoly over ``variables``.

    Without ``variables`` the ring is inferred from the text.
    """
    terms = parse_terms(text)
    if variables is None:
        variables = infer_variables([text])
    index = {v: j for j, v in enumerate(variables)}
    out: dict = {}
    for c, mono in terms:
        e = [0] * len(variables)
        for v, k in mono.items():
            if v not in index:
                raise ParseError(f"unknown variable {v!r} for ring {tuple(variables)}", text.find(v))
            e[index[v]] += k
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return MultiPoly(len(variables), out)
