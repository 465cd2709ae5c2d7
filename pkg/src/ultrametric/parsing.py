"""Exact text input for the CLI: rationals "a/b", polynomials and series in
caret notation, built-in series generators.  No float literals are accepted
anywhere."""

from __future__ import annotations

import re
from fractions import Fraction


class InputSyntaxError(ValueError):
    """Malformed user input; the CLI maps this to exit code 1."""


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_FACTOR = re.compile(r"\d+(?:/\d+)?|[A-Za-z](?:\^\d+)?")


def parse_rational(text: str) -> Fraction:
    text = text.strip().replace("−", "-")
    if not _RATIONAL.match(text):
        raise InputSyntaxError(f"not an exact rational: {text!r}")
    return Fraction(text)


def _parse_term(term: str):
    """-> (coefficient, {var: exponent})"""
    sign = 1
    body = term
    while body and body[0] in "+-":
        if body[0] == "-":
            sign = -sign
        body = body[1:]
    if not body:
        raise InputSyntaxError(f"empty term in {term!r}")
    pieces = [p for p in body.split("*") if p != ""]
    coeff = Fraction(sign)
    powers: dict[str, int] = {}
    for piece in pieces:
        matches = _FACTOR.findall(piece)
        if "".join(matches) != piece:
            raise InputSyntaxError(f"cannot parse term factor {piece!r}")
        for tok in matches:
            if tok[0].isdigit():
                coeff *= Fraction(tok)
            else:
                var = tok[0]
                k = int(tok[2:]) if "^" in tok else 1
                powers[var] = powers.get(var, 0) + k
    return coeff, powers


def parse_multipoly(text: str):
    """-> (terms dict exponent-tuple -> Fraction, ordered variable names).

    Variables are single letters, ordered alphabetically; exponent tuples
    follow that order.
    """
    s = text.replace(" ", "").replace("−", "-")
    if not s:
        raise InputSyntaxError("empty polynomial")
    terms_txt = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms_txt) != s:
        raise InputSyntaxError(f"cannot parse polynomial {text!r}")
    parsed = [_parse_term(t) for t in terms_txt]
    variables = sorted({v for _, pw in parsed for v in pw})
    n = max(1, len(variables))
    terms: dict[tuple, Fraction] = {}
    for coeff, powers in parsed:
        e = tuple(powers.get(v, 0) for v in variables) or (0,)
        if len(e) != n:
            e = e + (0,) * (n - len(e))
        terms[e] = terms.get(e, Fraction(0)) + coeff
    terms = {e: c for e, c in terms.items() if c != 0}
    return terms, variables


def parse_univariate(text: str) -> list[Fraction]:
    """Ascending coefficient list of a one-variable polynomial."""
    terms, variables = parse_multipoly(text)
    if len(variables) > 1:
        raise InputSyntaxError(f"expected one variable, got {variables}")
    if not terms:
        return [Fraction(0)]
    deg = max(e[0] for e in terms)
    out = [Fraction(0)] * (deg + 1)
    for e, c in terms.items():
        out[e[0]] = c
    return out


_GENERATOR = re.compile(r"^(exp|log)-trunc:(\d+)$")


def parse_series_text(text: str, p: int):
    """Coefficient list: either a polynomial in one variable or one of the
    built-in generators exp-trunc:N / log-trunc:N."""
    from .series import exp_series, log_series

    m = _GENERATOR.match(text.strip())
    if m:
        kind, M = m.group(1), int(m.group(2))
        series = exp_series(p, M) if kind == "exp" else log_series(p, M)
        return list(series.coeffs)
    return parse_univariate(text)


def parse_point(text: str) -> list[Fraction]:
    return [parse_rational(x) for x in text.split(",") if x.strip() != ""]


def parse_system(text: str):
    """Semicolon-separated polynomials sharing one alphabetical variable
    order; returns (list of term dicts, variables)."""
    parts = [s for s in text.split(";") if s.strip()]
    if not parts:
        raise InputSyntaxError("empty system")
    parsed = [parse_multipoly(s) for s in parts]
    variables = sorted({v for _, vs in parsed for v in vs})
    n = len(variables)
    systems = []
    for terms, vs in parsed:
        fixed: dict[tuple, Fraction] = {}
        for e, c in terms.items():
            powers = dict(zip(vs, e))
            fixed[tuple(powers.get(v, 0) for v in variables)] = c
        systems.append(fixed)
    return systems, variables
