"""Newton's method over Q_p: univariate root lifting, multivariate square
systems, and coprime-factor lifting.

The univariate convergence condition is v(f(a)) > 2*v(f'(a)); under it the
iteration a <- a - f(a)/f'(a) converges quadratically to the unique root
within |T - a| < |f'(a)|, with v(root - a) = v(f(a)) - v(f'(a)) and
v(f'(a_n)) stationary along the whole run.

Factor lifting is multivariate Newton on coefficient space: the differential
of (g, h) -> g*h is (u, v) -> u*h + g*v, whose determinant is the resultant
of the factors, so the convergence condition becomes
v(f - g0*h0) > 2*v(Res(g0, h0)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import multipoly as mp
from .errors import (
    DegreeMismatch,
    HenselConditionFailed,
    NotAResidueRoot,
    NotIntegral,
    PrecisionError,
    ResidueRootNotSimple,
    ResultantBoundViolated,
    SingularJacobian,
)
from .padic import PadicNumber
from .resultants import det_bareiss, poly_degree, resultant, solve_mod
from .valuations import INF, Infinity, require_prime, vp


@dataclass(frozen=True)
class PadicPolynomial:
    """Dense univariate polynomial over Q tagged with a prime; coefficient
    valuations are read through vp."""

    p: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def make(cls, p: int, coeffs) -> "PadicPolynomial":
        require_prime(p)
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs or cs == [Fraction(0)]:
            raise ValueError("the zero polynomial has no leading coefficient")
        return cls(p, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_integral(self) -> bool:
        return all(vp(c, self.p) >= 0 for c in self.coeffs)

    def derivative(self) -> "PadicPolynomial":
        if self.degree == 0:
            raise ValueError("derivative of a constant is zero")
        return PadicPolynomial.make(
            self.p, [k * c for k, c in enumerate(self.coeffs)][1:]
        )

    def eval_exact(self, a) -> Fraction:
        a = Fraction(a)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def eval_padic(self, x: PadicNumber) -> PadicNumber:
        """Horner evaluation in tracked-precision arithmetic."""
        if x.is_exact_zero:
            raise PrecisionError("evaluate at a finite-precision point")
        if x.p != self.p:
            raise ValueError("mismatched primes")
        target = x.abs_prec
        acc = PadicNumber.zero(self.p)
        for c in reversed(self.coeffs):
            n = target - vp(c, self.p) if c != 0 else 1
            cv = PadicNumber.from_rational(c, self.p, max(1, n))
            acc = acc * x + cv
        return acc


def _lower_bound_val(x: PadicNumber):
    return x.val_floor  # INF for exact zero


def newton_lift(phi: PadicPolynomial, a: PadicNumber, target: int):
    """Lift a to a root of phi with phi(root) = 0 mod p**target.

    Returns (root, iterations).  The iteration stops when the tracked value of
    phi(a_n) is certified zero to absolute precision target + v(phi'(a)); that
    also pins the root itself mod p**target.  Iteration count witnesses
    quadratic convergence: at most ceil(log2(target)) + 2 steps.
    """
    if target < 1:
        raise ValueError("target precision must be >= 1")
    if not phi.is_integral():
        raise NotIntegral("coefficients must lie in Z_p")
    if phi.degree < 1:
        raise DegreeMismatch("need a nonconstant polynomial")
    p = phi.p
    if a.p != p:
        raise ValueError("mismatched primes")
    if not a.is_exact_zero and a.val_floor < 0:
        raise NotIntegral("starting point must lie in Z_p")
    a0 = 0 if a.is_exact_zero else a.residue(a.abs_prec)

    fa = phi.eval_exact(a0)
    if fa == 0:
        return PadicNumber.from_rational(a0, p, target + 1).crop_abs(target), 0
    dphi = phi.derivative()
    dfa = dphi.eval_exact(a0)
    e = vp(fa, p)
    mu = vp(dfa, p) if dfa != 0 else INF
    if isinstance(mu, Infinity) or e <= 2 * mu:
        raise HenselConditionFailed(
            f"v(phi(a)) = {e} must exceed 2*v(phi'(a)) = {2 * mu if not isinstance(mu, Infinity) else mu}",
            f_val=e,
            df_val=mu,
        )

    maxiter = max(1, target - 1).bit_length() + 2
    work = target + mu * (maxiter + 2) + 4
    x = PadicNumber.from_rational(a0, p, work)
    iters = 0
    while True:
        fx = phi.eval_padic(x)
        if _lower_bound_val(fx) >= target + mu:
            break
        if iters >= maxiter:
            raise PrecisionError("Newton iteration exceeded its quadratic budget")
        dfx = dphi.eval_padic(x)
        if dfx.is_zero_like:
            raise PrecisionError("derivative vanished at working precision")
        x = x - fx / dfx
        iters += 1
    return x.crop_abs(target), iters


def simple_root_lift(phi: PadicPolynomial, a0: int, target: int) -> PadicNumber:
    """Lift a simple residue root mod p to the unique root congruent to it."""
    p = phi.p
    if not phi.is_integral():
        raise NotIntegral("coefficients must lie in Z_p")
    r = int(a0) % p
    if vp(phi.eval_exact(r), p) < 1:
        raise NotAResidueRoot(f"{r} is not a root of the reduction mod {p}")
    if vp(phi.derivative().eval_exact(r), p) != 0:
        raise ResidueRootNotSimple(f"{r} is a multiple root of the reduction mod {p}")
    start = PadicNumber.from_rational(r, p, 1) if r else PadicNumber.zero(p)
    root, _ = newton_lift(phi, start, target)
    return root


@dataclass(frozen=True)
class MultiPadicSystem:
    """Square polynomial system over Z_p: n sparse polynomials in n variables."""

    p: int
    n: int
    polys: tuple

    @classmethod
    def make(cls, p: int, polys) -> "MultiPadicSystem":
        require_prime(p)
        polys = tuple(polys)
        n = len(polys)
        cleaned = []
        for f in polys:
            t = mp.make_terms(n, f)
            for c in t.values():
                if vp(c, p) < 0:
                    raise NotIntegral(f"coefficient {c} is not in Z_p")
            cleaned.append(t)
        return cls(p, n, tuple(cleaned))

    def jacobian_terms(self):
        return [[mp.mp_diff(f, j) for j in range(self.n)] for f in self.polys]


def newton_system(system: MultiPadicSystem, start, target: int):
    """Multivariate Newton: returns the root mod p**target as an int tuple.

    Convergence condition: min_i v(F_i(a)) > 2*v(det DF(a)).  Each linear step
    solves DF(a) * delta = F(a) exactly over Z/p^K via the pivoted elimination
    in `resultants.solve_mod` (adjugate-times-inverse-determinant in effect).
    """
    p, n = system.p, system.n
    if len(start) != n:
        raise DegreeMismatch("start point has wrong dimension")
    start = [Fraction(x) for x in start]
    for x in start:
        if vp(x, p) < 0:
            raise NotIntegral("start point must lie in Z_p^n")
    if target < 1:
        raise ValueError("target precision must be >= 1")

    values = [mp.mp_eval(f, start) for f in system.polys]
    e = min((vp(v, p) for v in values), default=INF)
    jac = system.jacobian_terms()
    jmat = [[mp.mp_eval(jac[i][j], start) for j in range(n)] for i in range(n)]
    det = det_bareiss(jmat)
    if det == 0:
        raise SingularJacobian("Jacobian determinant vanishes at the start point")
    w = vp(det, p)
    if e <= 2 * w:
        raise HenselConditionFailed(
            f"min v(F(a)) = {e} must exceed 2*v(J(a)) = {2 * w}",
            f_val=e,
            df_val=w,
        )

    maxiter = max(1, target + w - 1).bit_length() + 3
    K = target + w * (maxiter + 2) + 4
    m = p**K
    a = [f.numerator * pow(f.denominator, -1, m) % m for f in start]
    iters = 0
    while True:
        F = [mp.mp_eval_mod(f, a, p, K) for f in system.polys]
        vmin = min((K if x == 0 else vp(x, p) for x in F), default=K)
        if vmin >= target + w:
            break
        if iters > maxiter:
            raise PrecisionError("multivariate Newton exceeded its budget")
        M = [[mp.mp_eval_mod(jac[i][j], a, p, K) for j in range(n)] for i in range(n)]
        delta, _ = solve_mod(M, F, p, K)
        a = [(x - d) % m for x, d in zip(a, delta)]
        iters += 1
    t = p**target
    return tuple(x % t for x in a)


def _pair_product_system(phi: PadicPolynomial, P: int, Q: int, lc_psi, lc_eta):
    """Equations phi_m - coeff_m(psi*eta) = 0 for m < P+Q, unknowns = the
    non-leading coefficients of both factors."""
    n = P + Q
    zero = (0,) * n

    def e_var(i):
        return tuple(1 if j == i else 0 for j in range(n))

    eqs = []
    for mth in range(n):
        terms = {zero: phi.coeffs[mth] if mth < len(phi.coeffs) else Fraction(0)}

        def put(key, c):
            terms[key] = terms.get(key, Fraction(0)) + c
            if terms[key] == 0:
                del terms[key]

        for i in range(min(mth, P - 1) + 1):
            j = mth - i
            if j < Q:
                put(tuple(a + b for a, b in zip(e_var(i), e_var(P + j))), Fraction(-1))
            elif j == Q:
                put(e_var(i), -lc_eta)
        j = mth - P
        if 0 <= j < Q:
            put(e_var(P + j), -lc_psi)
        eqs.append(terms)
    return eqs


def lift_factorization(
    phi: PadicPolynomial,
    psi0: PadicPolynomial,
    eta0: PadicPolynomial,
    target: int,
):
    """Lift an approximate coprime factorization phi ~ psi0*eta0 to an exact
    one mod p**target.

    Preconditions: deg phi = deg psi0 + deg eta0 with matching leading
    coefficients, all coefficients in Z_p, and
    v(phi - psi0*eta0) > 2*v(Res(psi0, eta0)) with the resultant taken at the
    formal degrees (deg psi0, deg eta0).
    """
    p = phi.p
    if psi0.p != p or eta0.p != p:
        raise ValueError("mismatched primes")
    P, Q = psi0.degree, eta0.degree
    if phi.degree != P + Q:
        raise DegreeMismatch(
            f"deg phi = {phi.degree} but deg psi0 + deg eta0 = {P + Q}"
        )
    if phi.coeffs[-1] != psi0.coeffs[-1] * eta0.coeffs[-1]:
        raise DegreeMismatch(
            "leading coefficients must satisfy lc(phi) = lc(psi0)*lc(eta0) exactly"
        )
    for f in (phi, psi0, eta0):
        if not f.is_integral():
            raise NotIntegral("coefficients must lie in Z_p")

    R = resultant(list(psi0.coeffs), list(eta0.coeffs), P, Q)
    if R == 0:
        raise ResultantBoundViolated("Res(psi0, eta0) = 0: factors share a root")
    vR = vp(R, p)

    prod = [Fraction(0)] * (P + Q + 1)
    for i, ci in enumerate(psi0.coeffs):
        for j, cj in enumerate(eta0.coeffs):
            prod[i + j] += ci * cj
    residual = [a - b for a, b in zip(phi.coeffs, prod)]
    if all(c == 0 for c in residual):
        return psi0, eta0
    vres = min(vp(c, p) for c in residual if c != 0)
    if vres <= 2 * vR:
        raise ResultantBoundViolated(
            f"v(phi - psi0*eta0) = {vres} must exceed 2*v(Res) = {2 * vR}"
        )

    eqs = _pair_product_system(phi, P, Q, psi0.coeffs[-1], eta0.coeffs[-1])
    system = MultiPadicSystem.make(p, eqs)
    start = list(psi0.coeffs[:P]) + list(eta0.coeffs[:Q])
    sol = newton_system(system, start, target)
    psi = PadicPolynomial.make(p, list(sol[:P]) + [psi0.coeffs[-1]])
    eta = PadicPolynomial.make(p, list(sol[P:]) + [eta0.coeffs[-1]])
    return psi, eta
