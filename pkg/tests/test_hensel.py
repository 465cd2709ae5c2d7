from fractions import Fraction

import pytest

from ultrametric.errors import (
    HenselConditionFailed,
    NotAResidueRoot,
    ResidueRootNotSimple,
    ResultantBoundViolated,
)
from ultrametric.hensel import (
    MultiPadicSystem,
    PadicPolynomial,
    lift_factorization,
    newton_lift,
    newton_system,
    simple_root_lift,
)
from ultrametric.padic import PadicNumber, teichmuller
from ultrametric.valuations import vp


def brute_poly_roots_mod(coeffs, m) -> set[int]:
    """Oracle: roots of an integer polynomial modulo m by exhaustion."""
    out = set()
    for x in range(m):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % m
        if acc == 0:
            out.add(x)
    return out


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_newton_lift_sqrt2():
    phi = PadicPolynomial.make(7, [-2, 0, 1])
    root, iters = newton_lift(phi, PadicNumber.from_rational(3, 7, 1), 3)
    roots = brute_poly_roots_mod([-2, 0, 1], 343)
    assert roots == {108, 235}
    assert root.residue(3) == 108
    assert iters <= 4


def test_newton_lift_linear_exact():
    phi = PadicPolynomial.make(5, [-7, 1])  # T - 7
    start = PadicNumber.from_rational(2, 5, 1)  # 2 = 7 mod 5
    root, iters = newton_lift(phi, start, 6)
    assert root.residue(6) == 7
    assert iters <= 1


def test_newton_lift_condition_failure():
    phi = PadicPolynomial.make(2, [1, 0, 1])  # T^2 + 1
    with pytest.raises(HenselConditionFailed) as e:
        newton_lift(phi, PadicNumber.from_rational(1, 2, 3), 3)
    assert e.value.f_val == 1 and e.value.df_val == 1


def test_newton_root_distance():
    # v(root - a) = v(phi(a)) - v(phi'(a))
    phi = PadicPolynomial.make(7, [-2, 0, 1])
    a = 3
    e = vp(phi.eval_exact(a), 7)
    mu = vp(phi.derivative().eval_exact(a), 7)
    root, _ = newton_lift(phi, PadicNumber.from_rational(a, 7, 1), 8)
    diff = root - PadicNumber.from_rational(a, 7, 9)
    assert diff.val == e - mu == 1


def test_quadratic_error_law_and_stationarity():
    # with h = v(phi(a)) - 2 v(phi'(a)) > 0: v(phi(a_n)) - 2mu >= 2^n * h
    phi = PadicPolynomial.make(3, [-10, 0, 1])  # T^2 - 10, root near 1
    x = PadicNumber.from_rational(1, 3, 40)
    dphi = phi.derivative()
    mu = vp(dphi.eval_exact(1), 3)
    h = vp(phi.eval_exact(1), 3) - 2 * mu
    assert h > 0
    vals = []
    for n in range(4):
        fx = phi.eval_padic(x)
        vals.append(fx.val_floor)
        dfx = dphi.eval_padic(x)
        assert dfx.val == mu  # stationarity of the derivative valuation
        x = x - fx / dfx
    for n, v in enumerate(vals):
        assert v - 2 * mu >= 2**n * h


def test_newton_lift_iteration_bound():
    phi = PadicPolynomial.make(7, [-2, 0, 1])
    for target in (5, 20, 64):
        _, iters = newton_lift(phi, PadicNumber.from_rational(3, 7, 1), target)
        assert iters <= max(1, target - 1).bit_length() + 2


def test_newton_lift_uniqueness_small():
    # all brute-force roots b mod p^4 with v(b - a) > v(phi'(a)) agree with the lift
    phi = PadicPolynomial.make(5, [-6, 0, 1])  # T^2 - 6, roots 1, 4 mod 5
    root, _ = newton_lift(phi, PadicNumber.from_rational(1, 5, 1), 4)
    m = 5**4
    for b in brute_poly_roots_mod([-6, 0, 1], m):
        if (b - 1) % 5 == 0:
            assert b == root.residue(4)


def test_simple_root_lift_teichmuller_consistency():
    p, N = 5, 6
    phi = PadicPolynomial.make(p, [-1, 0, 0, 0, 1])  # T^4 - 1
    for u in range(1, p):
        assert simple_root_lift(phi, u, N).residue(N) == teichmuller(u, p, N).residue(N)


def test_simple_root_lift_examples():
    phi = PadicPolynomial.make(5, [1, 0, 1])  # T^2 + 1
    r = simple_root_lift(phi, 2, 2)
    assert r.residue(2) == 7 and 7 in brute_poly_roots_mod([1, 0, 1], 25)

    tsq = PadicPolynomial.make(5, [0, -1, 1])  # T^2 - T
    assert simple_root_lift(tsq, 0, 4).is_exact_zero

    with pytest.raises(NotAResidueRoot):
        simple_root_lift(phi, 1, 3)
    with pytest.raises(ResidueRootNotSimple):
        simple_root_lift(PadicPolynomial.make(5, [0, 0, 1]), 0, 3)


def test_newton_system_example():
    sys2 = MultiPadicSystem.make(
        7, [{(2, 0): 1, (0, 0): -2}, {(0, 2): 1, (1, 0): -1, (0, 0): -1}]
    )
    pt = newton_system(sys2, (3, 2), 3)
    assert pt == (108, 65)
    # brute-force oracle over (Z/343)^2, restricted to the residue branch
    m = 343
    sols = {
        (x, y)
        for x in range(m)
        for y in range(m)
        if (x * x - 2) % m == 0 and (y * y - x - 1) % m == 0
        and x % 7 == 3 and y % 7 == 2
    }
    assert sols == {(108, 65)}


def test_newton_system_exact_start():
    sys1 = MultiPadicSystem.make(5, [{(1,): 1, (0,): -7}])
    assert newton_system(sys1, (7,), 4) == (7 % 625,)


def test_newton_system_condition_failure():
    sys2 = MultiPadicSystem.make(
        7, [{(2, 0): 1, (0, 0): -2}, {(0, 2): 1, (1, 0): -1, (0, 0): -1}]
    )
    with pytest.raises(HenselConditionFailed):
        newton_system(sys2, (3, 1), 3)  # y^2 - x - 1 = 4 mod 7, v = 0


def test_newton_system_matches_univariate():
    phi = PadicPolynomial.make(7, [-2, 0, 1])
    root, _ = newton_lift(phi, PadicNumber.from_rational(3, 7, 1), 6)
    sys1 = MultiPadicSystem.make(7, [{(2,): 1, (0,): -2}])
    assert newton_system(sys1, (3,), 6) == (root.residue(6),)


def test_lift_factorization_example():
    phi = PadicPolynomial.make(5, [-11, 0, 1])
    psi, eta = lift_factorization(
        phi,
        PadicPolynomial.make(5, [-1, 1]),
        PadicPolynomial.make(5, [1, 1]),
        2,
    )
    # branch with root = 1 mod 5: root 6 mod 25 (19^2 = 361 = 11 mod 25 gives -19 = 6)
    assert [c % 25 for c in psi.coeffs[:1]] == [19]  # T - 6 = T + 19 mod 25
    assert [c % 25 for c in eta.coeffs[:1]] == [6]  # T + 6
    prod = poly_mul(list(psi.coeffs), list(eta.coeffs))
    assert all((a - b) % 25 == 0 for a, b in zip(prod, phi.coeffs))


def test_lift_factorization_exact_input():
    phi = PadicPolynomial.make(5, poly_mul([-1, 1], [-2, 1]))
    psi0 = PadicPolynomial.make(5, [-1, 1])
    eta0 = PadicPolynomial.make(5, [-2, 1])
    psi, eta = lift_factorization(phi, psi0, eta0, 4)
    assert psi == psi0 and eta == eta0


def test_lift_factorization_zero_resultant():
    phi = PadicPolynomial.make(5, [-11, 0, 1])
    same = PadicPolynomial.make(5, [-1, 1])
    with pytest.raises(ResultantBoundViolated):
        lift_factorization(phi, same, same, 2)


def test_lift_factorization_factor_deltas():
    # coefficientwise v(psi* - psi0) > v(Res)
    phi = PadicPolynomial.make(5, [-11, 0, 1])
    psi0 = PadicPolynomial.make(5, [-1, 1])
    eta0 = PadicPolynomial.make(5, [1, 1])
    vR = vp(2, 5)  # Res(T-1, T+1) = 2
    psi, eta = lift_factorization(phi, psi0, eta0, 3)
    for a, b in zip(psi.coeffs, psi0.coeffs):
        assert a == b or vp(a - b, 5) > vR
    for a, b in zip(eta.coeffs, eta0.coeffs):
        assert a == b or vp(a - b, 5) > vR
