"""Fixed-precision arithmetic in Z_p and Q_p.

A PadicNumber is p**val * unit with the unit residue known modulo p**prec
(relative precision).  Three states:

  * exact zero          -- val = INF, no unit
  * ordinary value      -- val an int, unit coprime to p, prec >= 1
  * zero at precision   -- unit unknown, prec = 0; all that is certified is
                           v(x) >= val.  Produced by total cancellation in
                           add/sub; it is a signaled state, never a silent 0.

Absolute precision is val + prec: the value is known modulo p**(val+prec).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAUnit, NotIntegral, PrecisionError
from .valuations import INF, Infinity, int_multiplicity, require_prime, vp


@dataclass(frozen=True)
class PadicNumber:
    p: int
    val: "int | Infinity"
    unit: int | None
    prec: int | None

    def __post_init__(self):
        require_prime(self.p)
        if self.unit is None:
            if self.prec is None:
                if self.val != INF:
                    raise ValueError("exact zero must have valuation INF")
            elif self.prec != 0 or isinstance(self.val, Infinity):
                raise ValueError("zero-at-precision needs prec 0 and finite val")
        else:
            if not isinstance(self.prec, int) or self.prec < 1:
                raise ValueError("relative precision must be >= 1")
            if isinstance(self.val, Infinity):
                raise ValueError("nonzero value cannot have infinite valuation")
            m = self.p**self.prec
            if not 0 < self.unit < m or self.unit % self.p == 0:
                raise ValueError("unit must be reduced mod p**prec and coprime to p")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "PadicNumber":
        return cls(p, INF, None, None)

    @classmethod
    def zero_at_precision(cls, p: int, k: int) -> "PadicNumber":
        """The indistinguishable-from-zero state: only v(x) >= k is known."""
        return cls(p, int(k), None, 0)

    @classmethod
    def from_rational(cls, a, p: int, N: int) -> "PadicNumber":
        """a as a p-adic number with relative precision N; v(a distributes the
        denominator's p-part into the valuation."""
        require_prime(p)
        if N < 1:
            raise ValueError("relative precision must be >= 1")
        a = Fraction(a)
        if a == 0:
            return cls.zero(p)
        v = vp(a, p)
        rest = a / Fraction(p) ** v
        m = p**N
        u = rest.numerator * pow(rest.denominator, -1, m) % m
        return cls(p, v, u, N)

    # -- state predicates --------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.unit is None and self.prec is None

    @property
    def is_zero_at_precision(self) -> bool:
        return self.unit is None and self.prec == 0

    @property
    def is_zero_like(self) -> bool:
        return self.unit is None

    @property
    def abs_prec(self):
        """Exponent of the modulus the value is known by (INF if exact)."""
        return INF if self.is_exact_zero else self.val + self.prec

    @property
    def val_floor(self):
        """Certified lower bound on the valuation (the valuation itself when
        the value is not zero-like)."""
        return self.val

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "PadicNumber"):
        if not isinstance(other, PadicNumber):
            raise TypeError("mix PadicNumber with PadicNumber only")
        if other.p != self.p:
            raise ValueError("mismatched primes")

    def __neg__(self) -> "PadicNumber":
        if self.is_zero_like:
            return self
        m = self.p**self.prec
        return PadicNumber(self.p, self.val, (-self.unit) % m, self.prec)

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        p = self.p
        cap = min(self.abs_prec, other.abs_prec)
        vmin = min(self.val, other.val)
        m = p ** (cap - vmin)
        c = 0
        for x in (self, other):
            if x.unit is not None:
                c += x.unit * p ** (x.val - vmin)
        c %= m
        if c == 0:
            return PadicNumber.zero_at_precision(p, cap)
        dv = int_multiplicity(c, p)
        v = vmin + dv
        return PadicNumber(p, v, (c // p**dv) % p ** (cap - v), cap - v)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNumber.zero(self.p)
        v = self.val + other.val
        n = min(self.prec, other.prec)
        if n == 0:
            return PadicNumber.zero_at_precision(self.p, v)
        m = self.p**n
        return PadicNumber(self.p, v, self.unit * other.unit % m, n)

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if other.is_exact_zero:
            raise ZeroDivisionError("division by exact p-adic zero")
        if other.is_zero_like:
            raise PrecisionError(
                f"divisor is indistinguishable from zero at O({other.p}^{other.val})"
            )
        if self.is_exact_zero:
            return self
        v = self.val - other.val
        n = min(self.prec if self.unit is not None else 0, other.prec)
        if n == 0:
            return PadicNumber.zero_at_precision(self.p, v)
        m = self.p**n
        u = self.unit * pow(other.unit, -1, m) % m
        return PadicNumber(self.p, v, u, n)

    # -- views -------------------------------------------------------------

    def residue(self, k: int) -> int:
        """Canonical integer representative modulo p**k (requires v >= 0)."""
        if k < 0:
            raise ValueError("k must be >= 0")
        if self.is_exact_zero:
            return 0
        if self.val < 0:
            raise NotIntegral("negative valuation: not an element of Z_p")
        if k > self.abs_prec:
            raise PrecisionError(f"value only known modulo p^{self.abs_prec}")
        if self.is_zero_like:
            return 0
        return self.unit * self.p**self.val % self.p**k

    def crop_abs(self, k: int) -> "PadicNumber":
        """Forget digits beyond absolute precision k."""
        if self.is_exact_zero or self.abs_prec <= k:
            return self
        if self.is_zero_like or self.val >= k:
            return PadicNumber.zero_at_precision(self.p, min(self.val, k))
        return PadicNumber(self.p, self.val, self.unit % self.p ** (k - self.val), k - self.val)

    def agrees_with(self, other: "PadicNumber") -> bool:
        """True when the two values coincide at their shared precision."""
        return (self - other).is_zero_like

    def __repr__(self):
        if self.is_exact_zero:
            return f"0 (exact, Q_{self.p})"
        if self.is_zero_like:
            return f"O({self.p}^{self.val})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.abs_prec})"


def padic_ring_op(op: str, x: PadicNumber, y: PadicNumber) -> PadicNumber:
    """Dispatch table for the four ring operations."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def digits(x: PadicNumber, k: int) -> list[int]:
    """First k base-p digits of x in Z_p, canonical set {0, ..., p-1}."""
    if not x.is_exact_zero and x.val_floor < 0:
        raise NotIntegral("digit expansions require valuation >= 0")
    if not x.is_exact_zero and k > x.abs_prec:
        raise PrecisionError(f"only {x.abs_prec} digits are certified")
    r = x.residue(k) if not x.is_exact_zero else 0
    out = []
    for _ in range(k):
        out.append(r % x.p)
        r //= x.p
    return out


def teichmuller(u: int, p: int, N: int) -> PadicNumber:
    """The unique (p-1)-th root of unity in Z_p congruent to u mod p.

    Computed by Hensel lifting of T**(p-1) - 1 from the residue u; the
    x -> x**(p**k) powering construction is kept as a test oracle only.
    """
    require_prime(p)
    u %= p
    if u == 0:
        raise NotAUnit("u must be a nonzero residue mod p")
    if p == 2 or N == 1:
        return PadicNumber(p, 0, u, 1) if p != 2 else PadicNumber.from_rational(1, 2, N)
    from .hensel import PadicPolynomial, simple_root_lift

    phi = PadicPolynomial.make(p, [-1] + [0] * (p - 2) + [1])
    return simple_root_lift(phi, u, N)


def _sqrt_odd(x: PadicNumber) -> PadicNumber | None:
    p = x.p
    u0 = x.unit % p
    if pow(u0, (p - 1) // 2, p) != 1:
        return None
    r = next(r for r in range(1, p) if r * r % p == u0)
    r = min(r, p - r)
    from .hensel import PadicPolynomial, simple_root_lift

    phi = PadicPolynomial.make(p, [Fraction(-x.unit), 0, 1])
    root = simple_root_lift(phi, r, x.prec)
    return PadicNumber(p, x.val // 2, root.residue(x.prec), x.prec)


def _sqrt_two(x: PadicNumber) -> PadicNumber | None:
    if x.prec < 3:
        raise PrecisionError("deciding 2-adic squares needs the unit mod 8")
    if x.unit % 8 != 1:
        return None
    from .hensel import PadicPolynomial, newton_lift

    phi = PadicPolynomial.make(2, [Fraction(-x.unit), 0, 1])
    root, _ = newton_lift(phi, PadicNumber.from_rational(1, 2, 3), x.prec - 1)
    u = root.residue(x.prec - 1)
    if u % 4 == 3:
        u = (-u) % 2 ** (x.prec - 1)
    return PadicNumber(2, x.val // 2, u, x.prec - 1)


def padic_sqrt(x: PadicNumber) -> PadicNumber | None:
    """A square root of x in Q_p, or None when none exists.

    None cases: odd valuation; non-residue unit (p odd); unit not 1 mod 8
    (p = 2).  The returned branch is canonical: the residue in the lower half
    {1, ..., (p-1)/2} for odd p, the branch congruent to 1 mod 4 for p = 2.
    """
    if x.is_exact_zero:
        return x
    if x.is_zero_like:
        raise PrecisionError("cannot take the square root of a value "
                             "indistinguishable from zero")
    if x.val % 2 != 0:
        return None
    return _sqrt_two(x) if x.p == 2 else _sqrt_odd(x)
