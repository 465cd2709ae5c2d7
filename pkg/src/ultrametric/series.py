"""Truncated restricted power series ("Tate series") over Q with a designated
prime and radius R = p**(-s).

A TruncatedSeries stores c_0..c_M exactly; every operation documents which
output coefficients are trustworthy.  The Gauss norm is carried additively as
w_s = min_n (v(c_n) + n*s), so |phi|_R = p**(-w_s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, comb

from .errors import (
    DegreeMismatch,
    DominanceViolation,
    NotAUnit,
    RadiusMismatch,
    RadiusViolation,
    UnsupportedRadius,
    ZeroPolynomial,
)
from .polygons import NewtonPolygon, ValuedPoly, polygon, split_at_vertex
from .valuations import INF, Place, require_prime, vp


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    p: int
    coeffs: tuple[Fraction, ...]  # c_0 .. c_M
    s: Fraction = Fraction(0)  # radius exponent, R = p**(-s)

    @classmethod
    def make(cls, p: int, coeffs, s=0, M: int | None = None) -> "TruncatedSeries":
        require_prime(p)
        cs = [Fraction(c) for c in coeffs]
        if M is not None:
            if M < 0:
                raise ValueError("truncation order must be >= 0")
            cs = (cs + [Fraction(0)] * (M + 1))[: M + 1]
        if not cs:
            cs = [Fraction(0)]
        return cls(p, tuple(cs), Fraction(s))

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def stripped(self) -> tuple[Fraction, ...]:
        cs = list(self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return tuple(cs)

    def with_truncation(self, M: int) -> "TruncatedSeries":
        """Pad with zeros (asserting exactness) or cut down to order M."""
        return TruncatedSeries.make(self.p, self.coeffs, self.s, M)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.p, self.s, self.stripped()) == (other.p, other.s, other.stripped())

    def __hash__(self):
        return hash((self.p, self.s, self.stripped()))

    def __repr__(self):
        return f"TruncatedSeries(p={self.p}, M={self.M}, s={self.s})"


def exp_series(p: int, M: int) -> TruncatedSeries:
    """sum_{n<=M} T^n / n!"""
    return TruncatedSeries.make(p, [Fraction(1, factorial(n)) for n in range(M + 1)])


def log_series(p: int, M: int) -> TruncatedSeries:
    """sum_{1<=n<=M} (-1)^(n-1) T^n / n"""
    cs = [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, M + 1)]
    return TruncatedSeries.make(p, cs)


def gauss_norm_v(phi: TruncatedSeries):
    """(w, N): w = min_n (v(c_n) + n*s) over stored nonzero coefficients and
    N the largest index attaining it.  (INF, None) for the zero series."""
    w, arg = INF, None
    for n, c in enumerate(phi.coeffs):
        if c == 0:
            continue
        value = vp(c, phi.p) + n * phi.s
        if value <= w:
            w, arg = value, n
    return w, arg


def _check_compatible(phi: TruncatedSeries, psi: TruncatedSeries):
    if phi.p != psi.p:
        raise RadiusMismatch("series live over different primes")
    if phi.s != psi.s:
        raise RadiusMismatch(f"radius exponents differ: {phi.s} vs {psi.s}")


def series_add(phi: TruncatedSeries, psi: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(phi, psi)
    M = min(phi.M, psi.M)
    return TruncatedSeries.make(
        phi.p, [phi.coeffs[n] + psi.coeffs[n] for n in range(M + 1)], phi.s
    )


def series_mul(phi: TruncatedSeries, psi: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(phi, psi)
    M = min(phi.M, psi.M)
    out = [Fraction(0)] * (M + 1)
    for i, a in enumerate(phi.coeffs[: M + 1]):
        if a == 0:
            continue
        for j, b in enumerate(psi.coeffs[: M + 1 - i]):
            out[i + j] += a * b
    return TruncatedSeries.make(phi.p, out, phi.s)


def series_op(op: str, phi: TruncatedSeries, psi: TruncatedSeries) -> TruncatedSeries:
    if op == "add":
        return series_add(phi, psi)
    if op == "mul":
        return series_mul(phi, psi)
    raise ValueError(f"unknown op {op!r}")


def is_unit(phi: TruncatedSeries) -> bool:
    """Invertibility: v(c_n) + n*s > v(c_0) for every stored n > 0."""
    if phi.coeffs[0] == 0:
        return False
    v0 = vp(phi.coeffs[0], phi.p)
    return all(
        c == 0 or vp(c, phi.p) + n * phi.s > v0
        for n, c in enumerate(phi.coeffs[1:], start=1)
    )


def invert(phi: TruncatedSeries) -> TruncatedSeries:
    """Inverse mod T^(M+1) by the geometric series sum (1 - phi/c_0)^k."""
    if not is_unit(phi):
        raise NotAUnit("series fails the unit criterion |phi - phi(0)| < |phi(0)|")
    c0 = phi.coeffs[0]
    M = phi.M
    u = [-c / c0 for c in phi.coeffs]
    u[0] = Fraction(0)  # u = 1 - phi/c0, ord(u) >= 1
    acc = [Fraction(0)] * (M + 1)
    acc[0] = Fraction(1)
    term = list(acc)
    for _ in range(M):
        nxt = [Fraction(0)] * (M + 1)
        for i, a in enumerate(term):
            if a == 0:
                continue
            for j, b in enumerate(u[: M + 1 - i]):
                nxt[i + j] += a * b
        term = nxt
        for i, a in enumerate(term):
            acc[i] += a
        if all(a == 0 for a in term):
            break
    return TruncatedSeries.make(phi.p, [a / c0 for a in acc], phi.s)


def taylor_shift(phi: TruncatedSeries, a) -> TruncatedSeries:
    """Coefficients of phi(a + T), exact, truncated at M.  Requires
    v(a) >= s, i.e. |a| <= R."""
    a = Fraction(a)
    if a != 0 and vp(a, phi.p) < phi.s:
        raise RadiusViolation(f"|a| exceeds the radius: v(a) = {vp(a, phi.p)} < s = {phi.s}")
    M = phi.M
    out = [Fraction(0)] * (M + 1)
    for n in range(M + 1):
        total = Fraction(0)
        for m in range(n, M + 1):
            c = phi.coeffs[m]
            if c != 0:
                total += c * comb(m, n) * a ** (m - n)
        out[n] = total
    return TruncatedSeries.make(phi.p, out, phi.s)


def compose(phi: TruncatedSeries, psi: TruncatedSeries) -> TruncatedSeries:
    """Horner evaluation of sum c_m psi^m, truncated at min(M_phi, M_psi).

    Convergence precondition: w_s(psi) >= s (the image of the radius-R ball
    stays inside it).  When psi is an exact polynomial, pad it to M_phi first
    so no output coefficients are lost to the truncation rule.
    """
    _check_compatible(phi, psi)
    w, _ = gauss_norm_v(psi)
    if w < phi.s:
        raise RadiusViolation(f"w_s(psi) = {w} < s = {phi.s}: composition diverges")
    M = min(phi.M, psi.M)
    psi_c = psi.coeffs[: M + 1]
    acc = [Fraction(0)] * (M + 1)
    for c in reversed(phi.coeffs[: phi.M + 1]):
        nxt = [Fraction(0)] * (M + 1)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j, b in enumerate(psi_c[: M + 1 - i]):
                nxt[i + j] += a * b
        nxt[0] += c
        acc = nxt
    return TruncatedSeries.make(phi.p, acc, phi.s)


def divide_by_poly(phi: TruncatedSeries, P, d: int):
    """Weierstrass division phi = P*psi + rho mod T^(M+1) with deg rho < d.

    Requires deg P = d and the dominance condition w_s(P) = v(P_d) + d*s.
    Returns (psi, rho) with psi truncated at M - d and rho a coefficient
    tuple of length d.  Norm bounds: w(rho) >= w(phi) and
    w(P) + w(psi) >= w(phi).
    """
    P = [Fraction(c) for c in P]
    while len(P) > 1 and P[-1] == 0:
        P.pop()
    if len(P) - 1 != d or P[-1] == 0:
        raise DegreeMismatch(f"divisor must have degree exactly {d}")
    p, s, M = phi.p, phi.s, phi.M
    if M < d:
        raise DegreeMismatch("truncation order below the divisor degree")
    wP = min(vp(c, p) + n * s for n, c in enumerate(P) if c != 0)
    if vp(P[-1], p) + d * s != wP:
        raise DominanceViolation(
            "leading term does not dominate: w_s(P) < v(P_d) + d*s"
        )
    f = list(phi.coeffs)
    q = [Fraction(0)] * (M - d + 1)
    for k in range(M, d - 1, -1):
        c = f[k] / P[-1]
        q[k - d] = c
        if c != 0:
            for i, Pc in enumerate(P):
                f[k - d + i] -= c * Pc
    rho = tuple(f[:d])
    return TruncatedSeries.make(p, q, s), rho


DEFAULT_WEIERSTRASS_BUDGET = 20


def weierstrass_prepare(phi: TruncatedSeries, budget: int = DEFAULT_WEIERSTRASS_BUDGET):
    """Weierstrass preparation phi = psi * P with P monic of degree
    N = argmin_last of the Gauss norm and psi a unit.

    Computed as the polygon split of the stored truncation at the norm vertex,
    lifted until the residual phi - P*psi has coefficientwise valuation at
    least ``budget``.  Requires an integer radius exponent: the vertex
    renormalization multiplies by p**(n*s - w), which must stay rational.
    """
    if phi.is_zero():
        raise ZeroPolynomial("cannot prepare the zero series")
    if phi.s.denominator != 1:
        raise UnsupportedRadius(
            "weierstrass_prepare needs an integer radius exponent s"
        )
    s = int(phi.s)
    p = phi.p
    w, N = gauss_norm_v(phi)
    coeffs = list(phi.stripped())
    D = len(coeffs) - 1
    if N == 0:
        return (Fraction(1),), phi
    if N == D:
        P = tuple(c / coeffs[D] for c in coeffs)
        psi = TruncatedSeries.make(p, [coeffs[D]], phi.s, M=phi.M)
        return P, psi
    max_scale = max(0, s * D)
    needed = max(2, budget - int(w) + max_scale, budget)
    A, B = split_at_vertex(coeffs, p, N, -s, needed)
    P = A
    psi = TruncatedSeries.make(p, B, phi.s, M=phi.M)
    return P, psi


def strassmann_bound(phi: TruncatedSeries) -> int:
    """N = argmin_last of the Gauss norm: phi has at most N zeros in the
    closed ball of radius p**(-s)."""
    if phi.is_zero():
        raise ZeroPolynomial("the zero series has no zero bound")
    _, N = gauss_norm_v(phi)
    return N


def series_polygon(phi: TruncatedSeries) -> NewtonPolygon:
    """Polygon of the stored truncation.

    Caveat: this matches the polygon of the underlying series only on the
    truncation-stable initial segments; slopes near the truncation order may
    differ from the true series polygon.
    """
    if phi.is_zero():
        raise ZeroPolynomial("the zero series has no polygon")
    if phi.coeffs[0] == 0:
        raise ZeroPolynomial("factor out T^ord first: c_0 must be nonzero")
    return polygon(ValuedPoly.make(phi.stripped(), Place.padic(phi.p)))


def exp_log_polygon_oracle(kind: str, p: int):
    """Closed-form polygon evaluators for the exponential and logarithmic
    series: exp has nu(t) = -t/(p-1) on t >= 0; log has nu(p^m) = -m, affine
    on [p^m, p^(m+1)], and +inf on [0, 1)."""
    require_prime(p)
    if kind == "exp":

        def nu_exp(t):
            t = Fraction(t)
            if t < 0:
                return INF
            return -t / (p - 1)

        return nu_exp
    if kind == "log":

        def nu_log(t):
            t = Fraction(t)
            if t < 1:
                return INF
            m = 0
            while p ** (m + 1) <= t:
                m += 1
            lo, hi = p**m, p ** (m + 1)
            return Fraction(-m) + Fraction(-1, hi - lo) * (t - lo)

        return nu_log
    raise ValueError("kind must be 'exp' or 'log'")
