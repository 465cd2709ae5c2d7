import random
from fractions import Fraction
from itertools import product

import pytest

from ultrametric.errors import DegreeMismatch
from ultrametric.resultants import (
    det_bareiss,
    det_mod,
    discriminant,
    resultant,
    resultant_mod,
    sylvester_matrix,
)


def poly_gcd_degree(P, Q) -> int:
    """Oracle: degree of gcd over Q by the Euclidean algorithm."""
    a = [Fraction(c) for c in P]
    b = [Fraction(c) for c in Q]

    def strip(f):
        while f and f[-1] == 0:
            f.pop()
        return f

    a, b = strip(a), strip(b)
    while b:
        while len(a) >= len(b):
            c = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] -= c * bc
            a = strip(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1 if a else -1


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def det_laplace(M):
    """Oracle: cofactor-expansion determinant for small matrices."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * det_laplace(minor)
    return total


def test_resultant_examples():
    assert resultant([-1, 1], [1, 1], 1, 1) == 2
    assert resultant([1, 0, 1], [-2, 1], 2, 1) == 5
    P = [3, 2, 1]
    assert resultant(P, P, 2, 2) == 0


def test_sylvester_row_convention():
    M = sylvester_matrix([1, 0, 1], [0, 2], 2, 1)
    assert M == [[1, 0, 1], [2, 0, 0], [0, 2, 0]]


def test_discriminant_examples():
    assert discriminant([1, 0, 1], 2) == 4
    assert discriminant([-1, 0, 1], 2) == -4
    # (T - a)^2 has a double root
    a = Fraction(3, 2)
    assert discriminant([a * a, -2 * a, 1], 2) == 0


def test_formal_degree_validation():
    with pytest.raises(DegreeMismatch):
        resultant([1, 1, 1], [1, 1], 1, 1)


def test_det_bareiss_vs_laplace():
    rng = random.Random(5)
    for n in (2, 3, 4, 5):
        for _ in range(10):
            M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert det_bareiss(M) == det_laplace(M)


def test_det_mod_vs_integer_det():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(2, 5)
        p, k = rng.choice([(2, 8), (3, 5), (5, 4)]), None
        p, k = p
        M = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
        want = det_bareiss(M) % p**k
        got = det_mod([[x % p**k for x in row] for row in M], p, k)
        assert got == want


def test_base_change():
    rng = random.Random(7)
    for _ in range(200):
        p, k = rng.choice([(2, 6), (3, 4), (5, 3), (7, 3)])
        dp, dq = rng.randint(1, 4), rng.randint(1, 4)
        P = [rng.randint(-20, 20) for _ in range(dp + 1)]
        Q = [rng.randint(-20, 20) for _ in range(dq + 1)]
        R = resultant(P, Q, dp, dq)
        Rm = resultant_mod(P, Q, dp, dq, p, k)
        assert Rm == R % p**k


def test_vanishing_characterization_exhaustive():
    # over a field: Res = 0 iff gcd nonconstant or both formal degrees slack
    values = [-1, 0, 1]
    for dp, dq in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        for P in product(values, repeat=dp + 1):
            if all(c == 0 for c in P):
                continue
            for Q in product(values, repeat=dq + 1):
                if all(c == 0 for c in Q):
                    continue
                R = resultant(list(P), list(Q), dp, dq)
                gcd_pos = poly_gcd_degree(P, Q) > 0
                both_slack = P[-1] == 0 and Q[-1] == 0
                assert (R == 0) == (gcd_pos or both_slack), (P, Q)


def test_discriminant_root_identity_on_split_quartics():
    # monic split quartic: disc = prod phi'(a_j) = prod_{i<j} (a_j - a_i)^2
    # (the sign (-1)^(d(d-1)/2) is +1 at d = 4)
    rng = random.Random(8)
    for _ in range(50):
        roots = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(4)]
        phi = [Fraction(1)]
        for r in roots:
            phi = poly_mul(phi, [-r, 1])
        D = discriminant(phi, 4)
        sq = Fraction(1)
        for i in range(4):
            for j in range(i + 1, 4):
                sq *= (roots[j] - roots[i]) ** 2
        dphi = [k * c for k, c in enumerate(phi)][1:]
        prod_deriv = Fraction(1)
        for r in roots:
            acc = Fraction(0)
            for c in reversed(dphi):
                acc = acc * r + c
            prod_deriv *= acc
        assert D == sq == prod_deriv


def test_discriminant_sign_convention_quadratic():
    # at d = 2 the sign is (-1)^(d(d-1)/2) = -1: disc = -(a1 - a0)^2
    rng = random.Random(9)
    for _ in range(30):
        a0 = Fraction(rng.randint(-9, 9))
        a1 = Fraction(rng.randint(-9, 9))
        phi = poly_mul([-a0, 1], [-a1, 1])
        assert discriminant(phi, 2) == -((a1 - a0) ** 2)
