import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultrametric.errors import MissingPrimeDivisor, NonMonic, UnsupportedPlace
from ultrametric.polygons import (
    NewtonPolygon,
    ValuedPoly,
    coleman_degree_bound,
    eisenstein_check,
    extension_valuation,
    legendre_dual,
    lower_hull,
    polygon,
    pure_slope_irreducible,
    root_valuations,
    slope_factorization,
    tropical_eval,
)
from ultrametric.valuations import INF, Place, vp


def hull_value_oracle(points, t):
    """Oracle: greatest convex minorant as max over pair-lines below all points."""
    t = Fraction(t)
    best = None
    if len(points) == 1:
        return points[0][1] if t == points[0][0] else None
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            (x1, y1), (x2, y2) = points[i], points[j]
            slope = Fraction(y2 - y1, x2 - x1)

            def line(x):
                return y1 + slope * (x - x1)

            if all(line(x) <= y for x, y in points):
                v = line(t)
                if best is None or v > best:
                    best = v
    return best


def legendre_sup_oracle(points, t):
    """Oracle: sup_x (t x - tau(x)) evaluated at the finitely many breakpoints
    of tau(x) = max_m (m x - v_m)."""
    t = Fraction(t)
    candidates = set()
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            (m1, v1), (m2, v2) = points[i], points[j]
            candidates.add(Fraction(v2 - v1, m2 - m1))
    if not candidates:
        candidates = {Fraction(0)}

    def tau(x):
        return max(m * x - v for m, v in points)

    return max(t * x - tau(x) for x in candidates)


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def cyclotomic_shifted(p):
    """((T+1)^p - 1) / T, an Eisenstein polynomial at p."""
    from math import comb

    return [Fraction(comb(p, k + 1)) for k in range(p)]


P5 = Place.padic(5)

valued_polys = st.lists(
    st.tuples(
        st.integers(min_value=-6, max_value=6),
        st.integers(min_value=0, max_value=4),  # valuation exponent of 5
    ),
    min_size=1,
    max_size=8,
).map(
    lambda rows: [Fraction(c) * Fraction(5) ** v if c else Fraction(0) for c, v in rows]
)


def test_polygon_examples():
    eis = ValuedPoly.make([5, 10, 10, 5, 1], P5)
    ng = polygon(eis)
    assert ng.vertices == ((0, Fraction(1)), (4, Fraction(0)))
    assert [(s.slope, s.length) for s in ng.segments] == [(Fraction(-1, 4), 4)]

    q = ValuedPoly.make([5, -6, 1], P5)
    ng2 = polygon(q)
    assert ng2.vertices == ((0, Fraction(1)), (1, Fraction(0)), (2, Fraction(0)))
    assert [(s.slope, s.length) for s in ng2.segments] == [
        (Fraction(-1), 1),
        (Fraction(0), 1),
    ]

    const = polygon(ValuedPoly.make([7], Place.padic(7)))
    assert const.vertices == ((0, Fraction(1)),) and const.segments == ()


def test_polygon_order_recorded():
    ng = polygon(ValuedPoly.make([0, 0, 5, 1], P5))
    assert ng.order == 2 and ng.vertices[0][0] == 2


@given(valued_polys)
def test_hull_matches_oracle(coeffs):
    phi = ValuedPoly.make(coeffs, P5)
    if phi.is_zero():
        return
    pts = phi.points()
    ng = polygon(phi)
    lo, hi = ng.span
    for t in range(lo, hi + 1):
        assert ng.value_at(t) == hull_value_oracle(pts, t)


def test_root_valuations_examples():
    assert root_valuations(polygon(ValuedPoly.make([5, -6, 1], P5))) == [
        (Fraction(1), 1),
        (Fraction(0), 1),
    ]
    eis = polygon(ValuedPoly.make([5, 10, 10, 5, 1], P5))
    assert root_valuations(eis) == [(Fraction(1, 4), 4)]
    # (T-1)(T-3)(T-9) at p = 3: expand by hand
    c = poly_mul(poly_mul([-1, 1], [-3, 1]), [-9, 1])
    got = root_valuations(polygon(ValuedPoly.make(c, Place.padic(3))))
    assert got == [(Fraction(2), 1), (Fraction(1), 1), (Fraction(0), 1)]


def test_root_valuations_random_split_products():
    # polygon recovers the exact valuation multiset of (T - p^e u) products
    rng = random.Random(21)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        k = rng.randint(1, 5)
        exps = sorted(rng.randint(0, 5) for _ in range(k))
        phi = [Fraction(1)]
        for e in exps:
            u = rng.choice([1, 2, 3, 4, 6, 7])
            while u % p == 0:
                u += 1
            phi = poly_mul(phi, [Fraction(-(p**e) * u), Fraction(1)])
        got = root_valuations(polygon(ValuedPoly.make(phi, Place.padic(p))))
        multiset = sorted((v, m) for v, m in got)
        want = sorted((Fraction(e), exps.count(e)) for e in set(exps))
        assert multiset == want


def test_pure_slope_certificates():
    eis = ValuedPoly.make([5, 10, 10, 5, 1], P5)
    cert = pure_slope_irreducible(eis)
    assert cert.irreducible and (cert.r, cert.d) == (1, 4)

    two_slopes = pure_slope_irreducible(ValuedPoly.make([5, -6, 1], P5))
    assert not two_slopes.irreducible

    # T^2 - p^2: slope -1 = -2/2 has denominator 1, not 2; indeed (T-p)(T+p)
    for p in (3, 5, 7):
        c = ValuedPoly.make([-(p**2), 0, 1], Place.padic(p))
        assert not pure_slope_irreducible(c).irreducible

    with pytest.raises(NonMonic):
        pure_slope_irreducible(ValuedPoly.make([5, 10], P5))


def test_eisenstein_examples():
    assert eisenstein_check(ValuedPoly.make([5, 10, 10, 5, 1], P5))
    assert not eisenstein_check(ValuedPoly.make([-1, 0, 1], Place.padic(2)))
    assert eisenstein_check(ValuedPoly.make([2, 4, 0, 1], Place.padic(2)))


def test_eisenstein_implies_affine_polygon():
    rng = random.Random(31)
    for _ in range(40):
        p = rng.choice([2, 3, 5, 7])
        d = rng.randint(2, 6)
        coeffs = [Fraction(p * rng.choice([1, 2, 3, 4]))]
        while vp(coeffs[0], p) != 1:
            coeffs[0] = Fraction(p * rng.randint(1, 9))
        for _ in range(d - 1):
            coeffs.append(Fraction(p * rng.randint(0, 9)))
        coeffs.append(Fraction(1))
        phi = ValuedPoly.make(coeffs, Place.padic(p))
        if not eisenstein_check(phi):
            continue
        ng = polygon(phi)
        assert len(ng.segments) == 1
        assert ng.segments[0].slope == Fraction(-1, d)
        assert pure_slope_irreducible(phi).irreducible


def test_certified_irreducible_coefficient_bound():
    # certified irreducible with v(c_0) >= 0 forces every coefficient into Z_p
    rng = random.Random(41)
    found = 0
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        d = rng.randint(2, 5)
        coeffs = [
            Fraction(rng.randint(-20, 20), rng.choice([1, 1, 1, p]))
            for _ in range(d)
        ] + [Fraction(1)]
        phi = ValuedPoly.make(coeffs, Place.padic(p))
        if phi.coeffs[0] == 0:
            continue
        cert = pure_slope_irreducible(phi)
        if cert.irreducible and vp(phi.coeffs[0], p) >= 0:
            found += 1
            assert all(vp(c, p) >= 0 for c in phi.coeffs)
    assert found > 5


def test_tropical_and_duality_examples():
    triv = ValuedPoly.make([1, 1], Place.trivial())
    assert tropical_eval(triv, 2) == 2

    eis = ValuedPoly.make([5, 10, 10, 5, 1], P5)
    assert tropical_eval(eis, Fraction(-1, 4)) == -1

    ng = polygon(ValuedPoly.make([5, -6, 1], P5))
    assert legendre_dual(ng, 2) == 0
    assert legendre_dual(ng, Fraction(1, 2)) == Fraction(1, 2)
    assert legendre_dual(ng, 3) == INF
    assert legendre_dual(ng, -1) == INF


@given(valued_polys, st.integers(min_value=0, max_value=40))
def test_legendre_duality_random(coeffs, seed):
    phi = ValuedPoly.make(coeffs, P5)
    if phi.is_zero():
        return
    pts = phi.points()
    ng = polygon(phi)
    lo, hi = ng.span
    rng = random.Random(seed)
    probes = [Fraction(v[0]) for v in ng.vertices]
    for _ in range(4):
        num = rng.randint(0, 12)
        den = rng.randint(1, 12)
        t = lo + Fraction(num, den) * (hi - lo) / Fraction(13, 12) if hi > lo else Fraction(lo)
        if lo <= t <= hi:
            probes.append(t)
    for t in probes:
        assert legendre_dual(ng, t) == legendre_sup_oracle(pts, t)


def test_extension_valuation_examples():
    assert extension_valuation(ValuedPoly.make([-5, 0, 1], P5)) == Fraction(1, 2)
    assert extension_valuation(ValuedPoly.make([5, 10, 10, 5, 1], P5)) == Fraction(1, 4)
    assert extension_valuation(ValuedPoly.make([-2, 0, 1], Place.padic(7))) == 0


def check_factorization(phi_coeffs, factors, p, target):
    prod = [Fraction(1)]
    for f in factors:
        prod = poly_mul(prod, list(f.coeffs))
    m = p**target
    for a, b in zip(prod, phi_coeffs):
        d = a - b
        assert d.denominator % p != 0
        assert d.numerator * pow(d.denominator, -1, m) % m == 0


def test_slope_factorization_examples():
    q = ValuedPoly.make([5, -6, 1], P5)
    fs = slope_factorization(q, 3)
    assert [f.slope for f in fs] == [Fraction(-1), Fraction(0)]
    assert [f.degree for f in fs] == [1, 1]
    # exact roots are 5 and 1
    assert fs[0].coeffs[0] % 125 == (-5) % 125
    assert fs[1].coeffs[0] % 125 == (-1) % 125
    check_factorization(list(q.coeffs), fs, 5, 3)

    single = ValuedPoly.make([5, 10, 10, 5, 1], P5)
    fs1 = slope_factorization(single, 4)
    assert len(fs1) == 1 and fs1[0].coeffs == single.coeffs

    c = poly_mul(poly_mul([-1, 1], [-3, 1]), [-9, 1])
    fs3 = slope_factorization(ValuedPoly.make(c, Place.padic(3)), 3)
    assert [f.slope for f in fs3] == [Fraction(-2), Fraction(-1), Fraction(0)]
    check_factorization(c, fs3, 3, 3)
    assert fs3[0].coeffs[0] % 27 == (-9) % 27
    assert fs3[1].coeffs[0] % 27 == (-3) % 27
    assert fs3[2].coeffs[0] % 27 == (-1) % 27


def test_slope_factorization_fractional_slopes_stay_whole():
    # slopes -1/2 and 0: the vertex separates with sigma = 0
    phi = poly_mul([Fraction(5), Fraction(0), Fraction(1)], [Fraction(-1), Fraction(1)])
    fs = slope_factorization(ValuedPoly.make(phi, P5), 4)
    assert sorted((f.slope, f.degree) for f in fs) == [
        (Fraction(-1, 2), 2),
        (Fraction(0), 1),
    ]
    check_factorization(phi, fs, 5, 4)


def test_slope_factorization_each_factor_affine():
    rng = random.Random(51)
    for _ in range(20):
        p = rng.choice([2, 3, 5])
        exps = sorted({rng.randint(0, 4) for _ in range(rng.randint(2, 4))})
        phi = [Fraction(1)]
        for e in exps:
            u = 1 + rng.randint(0, p - 2) if p > 2 else 1
            phi = poly_mul(phi, [Fraction(-(p**e) * u), Fraction(1)])
        fs = slope_factorization(ValuedPoly.make(phi, Place.padic(p)), 8)
        assert sorted(f.slope for f in fs) == [Fraction(-e) for e in sorted(exps, reverse=True)]
        for f in fs:
            ng = polygon(ValuedPoly.make(f.coeffs, Place.padic(p)))
            assert len(ng.segments) == 1
        check_factorization(phi, fs, p, 8)


def test_coleman_degree_bound():
    assert coleman_degree_bound(30, [2, 3, 5]) == 30
    assert coleman_degree_bound(1, []) == 1
    assert coleman_degree_bound(4, [2]) == 4
    with pytest.raises(MissingPrimeDivisor):
        coleman_degree_bound(30, [2, 3])


def test_coleman_truncated_exponential_slopes():
    # the p = 2 polygon of sum T^k/k! (k <= 4) has slope denominator 4
    pts = [(m, Fraction(vp(Fraction(1, factorial(m)), 2))) for m in range(5)]
    hull = lower_hull(pts)
    ng = NewtonPolygon(tuple(hull), 0)
    assert [s.slope.denominator for s in ng.segments] == [4]


def test_real_place_rejected():
    with pytest.raises(UnsupportedPlace):
        ValuedPoly.make([1, 1], Place.real())
