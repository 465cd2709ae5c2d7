"""Multivariate supports, planar Newton polytopes, Minkowski sums, Gauss
norms and tropical evaluation, and a lattice indecomposability hint.

Full polygon geometry is restricted to two variables; supports, norms and
tropical values work in any dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from . import multipoly as mp
from .errors import DegreeMismatch, UnsupportedPlace, ZeroPolynomial
from .valuations import INF, Place


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Sparse polynomial in n variables over Q."""

    n: int
    terms: dict  # tuple[int, ...] -> Fraction

    @classmethod
    def make(cls, n: int, items) -> "MultiPoly":
        return cls(n, mp.make_terms(n, items))

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.n != other.n:
            raise DegreeMismatch("mismatched variable counts")
        return MultiPoly(self.n, mp.mp_mul(self.terms, other.terms))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.n != other.n:
            raise DegreeMismatch("mismatched variable counts")
        return MultiPoly(self.n, mp.mp_add(self.terms, other.terms))

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and (self.n, self.terms) == (other.n, other.terms)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))


def support(phi: MultiPoly) -> frozenset:
    """Exponent tuples with nonzero coefficient; empty iff phi = 0."""
    return frozenset(phi.terms)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon: counterclockwise vertices, no three
    consecutive collinear, starting at the lexicographically smallest."""

    vertices: tuple[tuple[int, int], ...]

    @classmethod
    def hull_of(cls, points) -> "LatticePolygon":
        pts = sorted({(int(x), int(y)) for x, y in points})
        if not pts:
            raise ZeroPolynomial("empty point set has no hull")
        if len(pts) == 1:
            return cls((pts[0],))
        lower, upper = [], []
        for q in pts:
            while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
                lower.pop()
            lower.append(q)
        for q in reversed(pts):
            while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
                upper.pop()
            upper.append(q)
        verts = lower[:-1] + upper[:-1]
        if len(verts) < 2:  # all collinear: keep the two endpoints
            verts = [pts[0], pts[-1]]
        return cls(tuple(verts))

    def edges(self) -> list[tuple[int, int]]:
        """Edge vectors of the counterclockwise boundary cycle; a segment
        contributes its vector and its negative."""
        vs = self.vertices
        if len(vs) == 1:
            return []
        if len(vs) == 2:
            (x0, y0), (x1, y1) = vs
            return [(x1 - x0, y1 - y0), (x0 - x1, y0 - y1)]
        out = []
        for a, b in zip(vs, vs[1:] + vs[:1]):
            out.append((b[0] - a[0], b[1] - a[1]))
        return out

    def translate(self, dx: int, dy: int) -> "LatticePolygon":
        return LatticePolygon(tuple((x + dx, y + dy) for x, y in self.vertices))


def polytope2(phi: MultiPoly) -> LatticePolygon:
    """Convex hull of the support of a bivariate polynomial."""
    if phi.n != 2:
        raise DegreeMismatch("polytope geometry is implemented for n = 2 only")
    if phi.is_zero():
        raise ZeroPolynomial("the zero polynomial has no polytope")
    return LatticePolygon.hull_of(support(phi))


def _angle_class(v) -> int:
    x, y = v
    if y == 0:
        return 0 if x > 0 else 2
    return 1 if y > 0 else 3


def _angle_cmp(a, b) -> int:
    qa, qb = _angle_class(a), _angle_class(b)
    if qa != qb:
        return -1 if qa < qb else 1
    c = a[0] * b[1] - a[1] * b[0]
    return 0 if c == 0 else (-1 if c > 0 else 1)


def _bottom_point(P: LatticePolygon):
    return min(P.vertices, key=lambda v: (v[1], v[0]))


def minkowski_sum(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    """Edge-vector merge of two convex polygons; equals {x + y}."""
    if len(P.vertices) == 1:
        (dx, dy) = P.vertices[0]
        return Q.translate(dx, dy)
    if len(Q.vertices) == 1:
        (dx, dy) = Q.vertices[0]
        return P.translate(dx, dy)
    edges = sorted(P.edges() + Q.edges(), key=cmp_to_key(_angle_cmp))
    px, py = _bottom_point(P)
    qx, qy = _bottom_point(Q)
    x, y = px + qx, py + qy
    walk = [(x, y)]
    for ex, ey in edges:
        x, y = x + ex, y + ey
        walk.append((x, y))
    return LatticePolygon.hull_of(walk)


def gauss_norm_multi(phi: MultiPoly, place: Place, s):
    """min over the support of (v(a_m) + m . s); INF iff phi = 0."""
    if place.kind == "real":
        raise UnsupportedPlace("Gauss norms need an ultrametric place")
    if phi.is_zero():
        return INF
    s = tuple(Fraction(x) for x in s)
    if len(s) != phi.n:
        raise DegreeMismatch("weight tuple has wrong length")
    best = None
    for e, c in phi.terms.items():
        value = Fraction(place.valuation(c)) + sum(
            (k * w for k, w in zip(e, s)), Fraction(0)
        )
        if best is None or value < best:
            best = value
    return best


def tropical_eval_multi(phi: MultiPoly, place: Place, x):
    """(max over the support of (m . x - v(a_m)), attained-by-unique-term).

    When the max is attained by a single term, the polynomial has no zeros on
    the corresponding torus shell.
    """
    if place.kind == "real":
        raise UnsupportedPlace("tropical evaluation needs an ultrametric place")
    if phi.is_zero():
        raise ZeroPolynomial("tropical evaluation needs a nonzero polynomial")
    x = tuple(Fraction(t) for t in x)
    if len(x) != phi.n:
        raise DegreeMismatch("probe tuple has wrong length")
    best, count = None, 0
    for e, c in phi.terms.items():
        value = sum((k * t for k, t in zip(e, x)), Fraction(0)) - Fraction(
            place.valuation(c)
        )
        if best is None or value > best:
            best, count = value, 1
        elif value == best:
            count += 1
    return best, count == 1


@dataclass(frozen=True)
class DecompositionHint:
    kind: str  # "indecomposable" | "decomposable" | "unknown"
    witness: tuple[LatticePolygon, LatticePolygon] | None = None


def _primitive_edges(P: LatticePolygon) -> list[tuple[tuple[int, int], int]]:
    counts: dict[tuple[int, int], int] = {}
    for ex, ey in P.edges():
        g = gcd(abs(ex), abs(ey))
        prim = (ex // g, ey // g)
        counts[prim] = counts.get(prim, 0) + g
    return sorted(counts.items())

def _polygon_from_edges(chosen: list[tuple[tuple[int, int], int]]) -> LatticePolygon:
    edges = sorted(
        (v for v, c in chosen for _ in range(c)), key=cmp_to_key(_angle_cmp)
    )
    x, y = 0, 0
    walk = [(0, 0)]
    for ex, ey in edges:
        x, y = x + ex, y + ey
        walk.append((x, y))
    return LatticePolygon.hull_of(walk)


def indecomposable_hint(P: LatticePolygon, guard: int = 12) -> DecompositionHint:
    """Brute-force Minkowski indecomposability.

    Splits the primitive edge multiset into two zero-sum halves; any such
    split realizes a decomposition into two lattice summands, and conversely.
    'indecomposable' certifies that every polynomial with this polytope (and
    support meeting its vertices) is irreducible over any field.  Inputs with
    more than ``guard`` primitive edges return 'unknown'.
    """
    if len(P.vertices) < 2:
        raise DegreeMismatch("decomposability needs at least two vertices")
    prim = _primitive_edges(P)
    total = sum(c for _, c in prim)
    if total > guard:
        return DecompositionHint("unknown")
    for combo in itertools.product(*(range(c + 1) for _, c in prim)):
        if all(k == 0 for k in combo) or all(
            k == c for k, (_, c) in zip(combo, prim)
        ):
            continue
        sx = sum(k * v[0] for k, (v, _) in zip(combo, prim))
        sy = sum(k * v[1] for k, (v, _) in zip(combo, prim))
        if sx == 0 and sy == 0:
            left = [(v, k) for k, (v, _) in zip(combo, prim) if k]
            right = [
                (v, c - k) for k, (v, c) in zip(combo, prim) if c - k
            ]
            return DecompositionHint(
                "decomposable",
                (_polygon_from_edges(left), _polygon_from_edges(right)),
            )
    return DecompositionHint("indecomposable")
