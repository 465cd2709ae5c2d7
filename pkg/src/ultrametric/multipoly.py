"""Sparse multivariate polynomials over Q as exponent-tuple -> coefficient
dicts.  Shared plumbing for the polytope geometry and the multivariate Newton
engine."""

from __future__ import annotations

from fractions import Fraction

from .errors import NotIntegral

Terms = dict  # tuple[int, ...] -> Fraction


def make_terms(n: int, items) -> Terms:
    """Validated term dict: exponent tuples of length n, no zero coefficients."""
    out: Terms = {}
    for expts, c in dict(items).items():
        expts = tuple(int(e) for e in expts)
        if len(expts) != n or any(e < 0 for e in expts):
            raise ValueError(f"bad exponent tuple {expts} for {n} variables")
        c = Fraction(c)
        if c != 0:
            out[expts] = out.get(expts, Fraction(0)) + c
            if out[expts] == 0:
                del out[expts]
    return out


def mp_add(f: Terms, g: Terms) -> Terms:
    out = dict(f)
    for e, c in g.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def mp_mul(f: Terms, g: Terms) -> Terms:
    out: Terms = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, Fraction(0)) + c1 * c2
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def mp_diff(f: Terms, var: int) -> Terms:
    out: Terms = {}
    for e, c in f.items():
        if e[var] > 0:
            e2 = e[:var] + (e[var] - 1,) + e[var + 1 :]
            out[e2] = out.get(e2, Fraction(0)) + c * e[var]
    return {e: c for e, c in out.items() if c != 0}


def mp_eval(f: Terms, point) -> Fraction:
    point = [Fraction(x) for x in point]
    total = Fraction(0)
    for e, c in f.items():
        term = c
        for x, k in zip(point, e):
            term *= x**k
        total += term
    return total


def mp_eval_mod(f: Terms, point, p: int, K: int) -> int:
    """Evaluate at an integer point modulo p**K; coefficients must lie in Z_p
    (denominators coprime to p)."""
    m = p**K
    total = 0
    for e, c in f.items():
        if c.denominator % p == 0:
            raise NotIntegral(f"coefficient {c} is not a p-adic integer")
        term = c.numerator % m * pow(c.denominator, -1, m) % m
        for x, k in zip(point, e):
            term = term * pow(x % m, k, m) % m
        total = (total + term) % m
    return total
