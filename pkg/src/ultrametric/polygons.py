"""Newton polygons of univariate polynomials: exact lower hulls, root
valuations, irreducibility certificates, slope factorization, tropical
evaluation and Legendre duality.

Everything is in v-units: the polygon is the lower convex hull of the points
(m, v(c_m)); a hull segment of slope t corresponds to roots of valuation -t.
Slopes are exact Fractions throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import (
    DegreeMismatch,
    MissingPrimeDivisor,
    NonMonic,
    UnsplittableSlopes,
    UnsupportedPlace,
    ZeroPolynomial,
)
from .hensel import PadicPolynomial, lift_factorization
from .valuations import INF, Infinity, Place, require_prime, vp, vp_factorial


@dataclass(frozen=True)
class ValuedPoly:
    """Polynomial over Q read through an ultrametric place."""

    coeffs: tuple[Fraction, ...]
    place: Place

    @classmethod
    def make(cls, coeffs, place: Place) -> "ValuedPoly":
        if place.kind == "real":
            raise UnsupportedPlace("polygons need an ultrametric place")
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs), place)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def points(self) -> list[tuple[int, Fraction]]:
        """(index, valuation) for each nonzero coefficient."""
        return [
            (m, Fraction(self.place.valuation(c)))
            for m, c in enumerate(self.coeffs)
            if c != 0
        ]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points with strictly increasing abscissas;
    collinear interior points are elided."""
    pts = sorted(points)
    hull: list[tuple[int, Fraction]] = []
    for q in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], q) <= 0:
            hull.pop()
        hull.append(q)
    return hull


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Vertex chain of the lower hull, slopes strictly increasing.

    ``order`` records the power of T factored out when c_0 = 0; the first
    vertex then sits at abscissa ``order``.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    order: int = 0

    @property
    def segments(self) -> tuple[Segment, ...]:
        out = []
        for (m0, v0), (m1, v1) in zip(self.vertices, self.vertices[1:]):
            out.append(Segment(Fraction(v1 - v0, m1 - m0), m1 - m0))
        return tuple(out)

    @property
    def span(self) -> tuple[int, int]:
        return self.vertices[0][0], self.vertices[-1][0]

    def value_at(self, t):
        """Piecewise-affine hull value; INF outside the hull range."""
        t = Fraction(t)
        lo, hi = self.span
        if t < lo or t > hi:
            return INF
        for (m0, v0), (m1, v1) in zip(self.vertices, self.vertices[1:]):
            if m0 <= t <= m1:
                return v0 + Fraction(v1 - v0, m1 - m0) * (t - m0)
        return self.vertices[0][1]


def polygon(phi: ValuedPoly) -> NewtonPolygon:
    """Newton polygon: the lower hull of (m, v(c_m)) over the support."""
    if phi.is_zero():
        raise ZeroPolynomial("the zero polynomial has no polygon")
    pts = phi.points()
    order = pts[0][0]
    return NewtonPolygon(tuple(lower_hull(pts)), order)


def root_valuations(ng: NewtonPolygon) -> list[tuple[Fraction, int]]:
    """Multiset of (root valuation, multiplicity): a segment of slope t and
    horizontal length l yields l roots of valuation -t."""
    if ng.order != 0:
        raise ZeroPolynomial(
            "factor out T^order first: root_valuations needs c_0 != 0"
        )
    return [(-seg.slope, seg.length) for seg in ng.segments]


@dataclass(frozen=True)
class PureSlopeCertificate:
    irreducible: bool
    r: int | None
    d: int | None
    reason: str


def pure_slope_irreducible(phi: ValuedPoly) -> PureSlopeCertificate:
    """Irreducibility by a pure polygon: monic phi with a single segment of
    slope -r/d in lowest terms and d = deg phi is irreducible.  Anything else
    is Inconclusive (never 'reducible')."""
    if not phi.is_monic():
        raise NonMonic("certificate applies to monic polynomials")
    if phi.coeffs[0] == 0:
        raise ZeroPolynomial("constant coefficient must be nonzero")
    ng = polygon(phi)
    segs = ng.segments
    if len(segs) != 1:
        return PureSlopeCertificate(False, None, None, "polygon has several slopes")
    slope = segs[0].slope
    d = phi.degree
    if slope.denominator != d:
        return PureSlopeCertificate(
            False, None, None,
            f"slope {slope} has denominator {slope.denominator}, not deg = {d}",
        )
    return PureSlopeCertificate(True, -slope.numerator, d, "single segment, slope denominator equals the degree")


def eisenstein_check(phi: ValuedPoly) -> bool:
    """Monic, every lower coefficient has v >= 1, and v(c_0) = 1 exactly."""
    if not phi.is_monic():
        raise NonMonic("Eisenstein's criterion applies to monic polynomials")
    v = phi.place.valuation
    if v(phi.coeffs[0]) != 1:
        return False
    return all(v(c) >= 1 for c in phi.coeffs[:-1])


def tropical_eval(phi: ValuedPoly, x) -> Fraction:
    """max over the support of (m*x - v(c_m)), the v-units tropical value."""
    if phi.is_zero():
        raise ZeroPolynomial("tropical evaluation needs a nonzero polynomial")
    x = Fraction(x)
    return max(m * x - v for m, v in phi.points())


def legendre_dual(ng: NewtonPolygon, t):
    """The polygon value at t, i.e. sup_x (t*x - tau(x)); INF outside the
    hull range."""
    return ng.value_at(t)


def extension_valuation(minpoly: ValuedPoly, d: int | None = None) -> Fraction:
    """Valuation of any root of a monic irreducible polynomial: v(c_0)/d.
    Irreducibility is the caller's certificate; garbage in, garbage out."""
    if not minpoly.is_monic():
        raise NonMonic("extension valuations need a monic minimal polynomial")
    d = minpoly.degree if d is None else d
    if d != minpoly.degree:
        raise DegreeMismatch("formal degree disagrees with the polynomial")
    return Fraction(minpoly.place.valuation(minpoly.coeffs[0]), 1) / d


# -- slope factorization -----------------------------------------------------


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod_monic(f, g):
    """Euclidean division by a monic polynomial, exact over Q."""
    f = [Fraction(c) for c in f]
    dg = len(g) - 1
    q = [Fraction(0)] * max(1, len(f) - dg)
    while len(f) - 1 >= dg and any(c != 0 for c in f):
        if f[-1] == 0:
            f.pop()
            continue
        shift = len(f) - 1 - dg
        c = f[-1]
        q[shift] = c
        for i, gc in enumerate(g):
            f[shift + i] -= c * gc
        f.pop()
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return q, f


def split_at_vertex(coeffs, p: int, k: int, sigma: int, needed: int):
    """Hensel-split a polynomial at the polygon vertex (k, v(c_k)) along an
    integer separating slope sigma in [slope_left, slope_right].

    Renormalizes by the support line L(m) = v(c_k) + sigma*(m-k) so the
    reduction mod p factors as S^a * h_left * h_right with the two sides
    coprime; lifts via `lift_factorization` (the resultant of the initial
    factors is a unit after this scaling); undoes the scaling.  Returns
    (A, B): A monic of degree k carrying the slopes < sigma side (and the
    slope-sigma face when sigma = slope_left), B the rest, with all
    coefficients certified mod p**needed.
    """
    coeffs = [Fraction(c) for c in coeffs]
    D = len(coeffs) - 1
    if not 0 < k < D:
        raise ValueError("split vertex must be interior")
    nu_k = vp(coeffs[k], p)

    def L(m: int) -> int:
        return nu_k + sigma * (m - k)

    chi = [c * Fraction(p) ** (-L(m)) for m, c in enumerate(coeffs)]
    # worst precision loss when undoing the scaling, per factor
    loss_A = max(0, sigma * k)
    exps_B = [nu_k + sigma * j for j in range(D - k + 1)]
    loss_B = max(0, -min(exps_B))
    t = needed + max(loss_A, loss_B)

    red = []
    for c in chi:
        if vp(c, p) > 0:
            red.append(0)
        else:
            red.append(c.numerator * pow(c.denominator, -1, p) % p)
    u_inv = pow(red[k], -1, p)
    psi0 = [Fraction(u_inv * r % p) for r in red[:k]] + [Fraction(1)]
    eta0, _rem = _poly_divmod_monic(chi, psi0)

    psi, eta = lift_factorization(
        PadicPolynomial.make(p, chi),
        PadicPolynomial.make(p, psi0),
        PadicPolynomial.make(p, eta0),
        t,
    )
    A = tuple(c * Fraction(p) ** (sigma * (j - k)) for j, c in enumerate(psi.coeffs))
    B = tuple(c * Fraction(p) ** (nu_k + sigma * j) for j, c in enumerate(eta.coeffs))
    return A, B


@dataclass(frozen=True)
class SlopeFactor:
    coeffs: tuple[Fraction, ...]
    slope: Fraction

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _separating_slope(lam_left: Fraction, lam_right: Fraction) -> int | None:
    """An integer in [lam_left, lam_right], preferring the largest."""
    s = floor(lam_right)
    return s if s >= lam_left else None


def _factor_by_slopes(coeffs, p: int, needed: int) -> list[SlopeFactor]:
    pts = [(m, Fraction(vp(c, p))) for m, c in enumerate(coeffs) if c != 0]
    hull = lower_hull(pts)
    ng = NewtonPolygon(tuple(hull), hull[0][0])
    segs = ng.segments
    if len(segs) <= 1:
        slope = segs[0].slope if segs else Fraction(0)
        return [SlopeFactor(tuple(coeffs), slope)]
    for i in range(1, len(hull) - 1):
        lam_l = Fraction(hull[i][1] - hull[i - 1][1], hull[i][0] - hull[i - 1][0])
        lam_r = Fraction(hull[i + 1][1] - hull[i][1], hull[i + 1][0] - hull[i][0])
        sigma = _separating_slope(lam_l, lam_r)
        if sigma is not None:
            A, B = split_at_vertex(coeffs, p, hull[i][0], sigma, needed)
            return _factor_by_slopes(A, p, needed) + _factor_by_slopes(B, p, needed)
    raise UnsplittableSlopes(
        "no vertex admits an integer separating slope; separating these "
        "segments needs a ramified extension, which is out of scope"
    )


def slope_factorization(phi: ValuedPoly, target: int) -> list[SlopeFactor]:
    """Factor a monic polynomial over Q_p into pieces of pure polygon slope.

    The product of the factors agrees with phi coefficientwise mod p**target;
    factor degrees equal segment lengths.  Splits cannot fail for distinct
    integer slopes: after the vertex renormalization the resultant of the
    initial factors is a p-adic unit.
    """
    if phi.place.kind != "padic":
        raise UnsupportedPlace("slope factorization works over Q_p")
    if not phi.is_monic():
        raise NonMonic("slope factorization expects a monic polynomial")
    if phi.coeffs[0] == 0:
        raise ZeroPolynomial("factor out T^order first: c_0 must be nonzero")
    if target < 1:
        raise ValueError("target precision must be >= 1")
    p = phi.place.p
    pts = [(m, vp(c, p)) for m, c in enumerate(phi.coeffs) if c != 0]
    height = max(v for _, v in pts) - min(v for _, v in pts)
    n_seg = len(NewtonPolygon(tuple(lower_hull([(m, Fraction(v)) for m, v in pts])), 0).segments)
    vmin = min(v for _, v in pts)
    guard = max(0, -vmin) * (n_seg + 1)
    needed = target + 2 + guard
    factors = _factor_by_slopes(list(phi.coeffs), p, needed)
    modulus = p**target
    reduced = []
    for f in factors:
        if all(vp(c, p) >= 0 for c in f.coeffs):
            cs = tuple(
                Fraction(c.numerator * pow(c.denominator, -1, modulus) % modulus)
                for c in f.coeffs[:-1]
            ) + (f.coeffs[-1],)
            reduced.append(SlopeFactor(cs, f.slope))
        else:
            reduced.append(f)
    return sorted(reduced, key=lambda f: f.slope)


def coleman_degree_bound(n: int, primes) -> int:
    """Degree lower bound for rational factors of sum_{k<=n} T^k/k!.

    For each p dividing n the polygon of the truncation (points
    (m, -v_p(m!))) has slopes -(p^e - 1)/(p^e (p-1)) whose reduced
    denominators are the powers p^e from the base-p digits of n; any
    Q_p-irreducible factor must have degree divisible by p^{v_p(n)}.  The
    product of those prime powers divides the degree of every rational
    factor; a bound of n certifies irreducibility over Q.
    """
    if n < 0:
        raise ValueError("n must be a natural number")
    if n <= 1:
        return 1
    primes = sorted({require_prime(p) for p in primes})
    rest = n
    for p in primes:
        while rest % p == 0:
            rest //= p
    if rest != 1:
        raise MissingPrimeDivisor(
            f"the prime list misses a divisor of {n} (leftover {rest})"
        )
    bound = 1
    for p in primes:
        if n % p != 0:
            continue
        pts = [(m, Fraction(-vp_factorial(m, p))) for m in range(n + 1)]
        hull = lower_hull(pts)
        segs = NewtonPolygon(tuple(hull), 0).segments
        exponents = []
        digits_desc = []
        nn = n
        while nn:
            digits_desc.append(nn % p)
            nn //= p
        expected = []
        for e in range(len(digits_desc) - 1, -1, -1):
            if digits_desc[e]:
                expected.append(
                    (Fraction(-(p**e - 1), p**e * (p - 1)), digits_desc[e] * p**e)
                )
        got = [(s.slope, s.length) for s in segs]
        if got != expected:
            raise AssertionError(
                f"polygon slopes {got} disagree with the digit decomposition {expected}"
            )
        for slope, _ in got:
            exponents.append(slope.denominator)
        e_min = min(exponents) if exponents else 1
        vpn = 0
        nn = n
        while nn % p == 0:
            nn //= p
            vpn += 1
        assert e_min == p**vpn
        bound *= p**vpn
    return bound
