"""Sylvester resultants and discriminants over exact coefficient domains.

Row convention: q_deg rows of P's coefficients (highest power first), then
p_deg rows of Q's, each shifted right by one column.  With that orientation
Res_{1,1}(T-1, T+1) = 2 and disc(T^2+1) = 4.

Determinants: fraction-free Bareiss over Z and Q; Gaussian elimination with
valuation pivoting over Z/p^k (the elimination multipliers are ring elements,
so no precision is lost and the result is exact mod p^k).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeMismatch, SingularJacobian
from .valuations import int_multiplicity

Coeffs = "list[Fraction | int]"


def _strip(poly) -> list:
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def poly_degree(poly) -> int:
    """Actual degree; -1 for the zero polynomial."""
    return len(_strip(poly)) - 1


def sylvester_matrix(P, Q, p_deg: int, q_deg: int):
    P, Q = list(P), list(Q)
    if poly_degree(P) > p_deg or poly_degree(Q) > q_deg:
        raise DegreeMismatch("formal degree below the actual degree")
    n = p_deg + q_deg
    rows = []
    desc_P = [P[p_deg - j] if p_deg - j < len(P) else 0 for j in range(p_deg + 1)]
    desc_Q = [Q[q_deg - j] if q_deg - j < len(Q) else 0 for j in range(q_deg + 1)]
    for i in range(q_deg):
        rows.append([0] * i + desc_P + [0] * (q_deg - 1 - i))
    for i in range(p_deg):
        rows.append([0] * i + desc_Q + [0] * (p_deg - 1 - i))
    assert all(len(r) == n for r in rows)
    return rows


def det_bareiss(M):
    """Exact determinant by fraction-free elimination (ints stay ints)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    exact_int = all(isinstance(x, int) for row in A for x in row)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if pivot is None:
                return 0
            A[k], A[pivot] = A[pivot], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                if exact_int:
                    q, r = divmod(num, prev)
                    assert r == 0
                    A[i][j] = q
                else:
                    A[i][j] = Fraction(num, prev) if prev != 1 else num
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _val_mod(x: int, p: int, K: int) -> int:
    """Valuation of a residue mod p^K, capped at K."""
    return K if x == 0 else min(int_multiplicity(x, p), K)


def det_mod(M, p: int, K: int) -> int:
    """Determinant of a matrix over Z/p^K, exact as a residue mod p^K."""
    n = len(M)
    if n == 0:
        return 1 % p**K
    m = p**K
    A = [[x % m for x in row] for row in M]
    sign = 1
    pivots = []
    for col in range(n):
        best, bestv = None, K
        for i in range(col, n):
            v = _val_mod(A[i][col], p, K)
            if v < bestv:
                best, bestv = i, v
        if best is None:
            return 0
        if best != col:
            A[col], A[best] = A[best], A[col]
            sign = -sign
        piv = A[col][col]
        u = piv // p**bestv
        u_inv = pow(u, -1, m)
        pivots.append(piv)
        for i in range(col + 1, n):
            x = A[i][col]
            if x == 0:
                continue
            # x/piv = (x * u^-1) / p^v; the p-power division is exact since
            # the pivot has minimal valuation in its column.
            q, r = divmod(x * u_inv % m, p**bestv)
            assert r == 0
            A[i] = [(a - q * b) % m for a, b in zip(A[i], A[col])]
    det = sign
    for piv in pivots:
        det = det * piv % m
    return det % m


def solve_mod(M, b, p: int, K: int):
    """Solve M x = b over Z/p^K by valuation-pivoted elimination.

    Returns (x, loss): x is exact modulo p^(K - loss) where loss is the
    valuation of det(M).  Raises SingularJacobian when the matrix is singular
    at working precision, and PrecisionError-like divisibility failures if the
    system has no p-integral solution at this precision.
    """
    n = len(M)
    m = p**K
    A = [[x % m for x in row] for row in M]
    rhs = [x % m for x in b]
    piv_vals = []
    for col in range(n):
        best, bestv = None, K
        for i in range(col, n):
            v = _val_mod(A[i][col], p, K)
            if v < bestv:
                best, bestv = i, v
        if best is None or bestv >= K:
            raise SingularJacobian(
                f"matrix is singular modulo {p}^{K} (column {col})"
            )
        if best != col:
            A[col], A[best] = A[best], A[col]
            rhs[col], rhs[best] = rhs[best], rhs[col]
        piv = A[col][col]
        u_inv = pow(piv // p**bestv, -1, m)
        piv_vals.append(bestv)
        for i in range(col + 1, n):
            x = A[i][col]
            if x == 0:
                continue
            q = x * u_inv % m
            qq, r = divmod(q, p**bestv)
            assert r == 0
            A[i] = [(a - qq * c) % m for a, c in zip(A[i], A[col])]
            rhs[i] = (rhs[i] - qq * rhs[col]) % m
    loss = sum(piv_vals)
    x = [0] * n
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, n):
            acc = (acc - A[i][j] * x[j]) % m
        v = piv_vals[i]
        u_inv = pow(A[i][i] // p**v, -1, m)
        acc = acc * u_inv % m
        q, r = divmod(acc, p**v)
        if r != 0:
            raise SingularJacobian(
                "no p-integral solution at working precision "
                f"(residue not divisible by {p}^{v})"
            )
        x[i] = q % m
    return x, loss


def resultant(P, Q, p_deg: int, q_deg: int):
    """Res_{p_deg, q_deg}(P, Q) over Z or Q, exact."""
    return det_bareiss(sylvester_matrix(P, Q, p_deg, q_deg))


def resultant_mod(P, Q, p_deg: int, q_deg: int, p: int, K: int) -> int:
    """Resultant with coefficients understood in Z/p^K."""
    M = sylvester_matrix([x % p**K for x in P], [x % p**K for x in Q], p_deg, q_deg)
    return det_mod(M, p, K)


def formal_derivative(poly):
    return [k * c for k, c in enumerate(poly)][1:] or [0 * poly[0]]


def discriminant(phi, d: int):
    """Res_{d, d-1}(phi, phi'), the separability detector.

    Sign follows the fixed row convention: disc(T^2+1) = 4, disc(T^2-1) = -4.
    For monic split phi of degree d this equals prod phi'(a_j) over the roots,
    which is (-1)^(d(d-1)/2) * prod_{i<j} (a_j - a_i)^2.
    """
    if d < 1:
        raise DegreeMismatch("discriminant needs formal degree >= 1")
    return resultant(phi, formal_derivative(phi), d, d - 1)
