"""p-adic valuations on Q, places, the product formula, and the closed form
for v_p(n!).

Everything here is additive: a valuation v stands for the absolute value
p**(-v), and all logarithms are base p with log(p) = 1.  No floats appear;
valuations are ints/Fractions or the INF singleton (the valuation of 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import NotPrime, SizeGuardExceeded, UnsupportedPlace


class Infinity:
    """Positive infinity: v(0).  Absorbs addition, dominates every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Infinity):
            raise ArithmeticError("inf - inf is undefined")
        return self

    def __neg__(self):
        raise ArithmeticError("-inf is not a valuation")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("ultrametric.INF")

    def __repr__(self):
        return "+inf"


INF = Infinity()

# Valuations live in Q ∪ {+inf}.
ExtVal = "Fraction | int | Infinity"

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a certified prime")
    return p


def int_multiplicity(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("multiplicity of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(a, p: int):
    """p-adic valuation of a rational; INF for 0."""
    require_prime(p)
    a = Fraction(a)
    if a == 0:
        return INF
    return int_multiplicity(a.numerator, p) - int_multiplicity(a.denominator, p)


@dataclass(frozen=True)
class Place:
    """A place of Q: trivial, p-adic, or the real archimedean one."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("trivial", "padic", "real"):
            raise UnsupportedPlace(f"unknown place kind {self.kind!r}")
        if self.kind == "padic":
            require_prime(self.p)
        elif self.p is not None:
            raise UnsupportedPlace(f"{self.kind} place carries no prime")

    @classmethod
    def trivial(cls) -> "Place":
        return cls("trivial")

    @classmethod
    def padic(cls, p: int) -> "Place":
        return cls("padic", p)

    @classmethod
    def real(cls) -> "Place":
        return cls("real")

    def valuation(self, a):
        """v(a) at an ultrametric place (trivial: 0 for a != 0)."""
        a = Fraction(a)
        if self.kind == "padic":
            return vp(a, self.p)
        if self.kind == "trivial":
            return INF if a == 0 else 0
        raise UnsupportedPlace("the real place has no additive valuation")

    def __repr__(self):
        if self.kind == "padic":
            return f"Place(p={self.p})"
        return f"Place({self.kind})"


def abs_at_place(a, place: Place) -> Fraction:
    """|a| at the place, as an exact rational."""
    a = Fraction(a)
    if place.kind == "real":
        return abs(a)
    if place.kind == "trivial":
        return Fraction(0) if a == 0 else Fraction(1)
    if a == 0:
        return Fraction(0)
    v = vp(a, place.p)
    return Fraction(1, place.p**v) if v >= 0 else Fraction(place.p ** (-v))


def _trial_factor(n: int, guard: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division; refuses above guard."""
    if n > guard:
        raise SizeGuardExceeded(
            f"{n} exceeds the trial-division guard {guard}; refusing rather than guessing"
        )
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    d = 5
    while d <= isqrt(n):
        for p in (d, d + 2):
            while n % p == 0:
                n //= p
                out[p] = out.get(p, 0) + 1
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def product_formula_check(a, guard: int = 10**9):
    """Check m_inf(a) * prod_p m_p(a) == m_0(a) exactly.

    Returns (holds, breakdown) where breakdown lists the real place and every
    p-adic place with p dividing numerator or denominator.  Inputs whose
    numerator/denominator exceed ``guard`` are refused (SizeGuardExceeded):
    factoring large integers is not this library's job.
    """
    a = Fraction(a)
    breakdown: list[tuple[Place, Fraction]] = [(Place.real(), abs(a))]
    if a == 0:
        return True, breakdown
    primes = set(_trial_factor(abs(a.numerator), guard))
    primes |= set(_trial_factor(a.denominator, guard))
    for p in sorted(primes):
        breakdown.append((Place.padic(p), abs_at_place(a, Place.padic(p))))
    product = Fraction(1)
    for _, value in breakdown:
        product *= value
    return product == Fraction(1), breakdown


def digit_sum_base_p(n: int, p: int) -> int:
    """Sum of the base-p digits of n >= 0."""
    require_prime(p)
    if n < 0:
        raise ValueError("n must be a natural number")
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def vp_factorial(n: int, p: int) -> int:
    """v_p(n!) by the closed form (n - digit_sum_p(n)) / (p - 1)."""
    s = digit_sum_base_p(n, p)
    q, r = divmod(n - s, p - 1)
    assert r == 0
    return q
