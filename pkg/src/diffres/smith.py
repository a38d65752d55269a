"""Smith and Hermite normal forms of integer matrices.

Matrices are lists of lists of Python ints.  Unimodular transforms are
tracked explicitly so callers can change lattice coordinates.
"""
from __future__ import annotations

from fractions import Fraction


def _eye(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _xgcd(a: int, b: int):
    """``(g, x, y)`` with ``a*x + b*y = g >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(A):
    """``(U, D, V)`` with ``U @ A @ V == D``, ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    D = [list(map(int, r)) for r in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                return U, D, V
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    for M in (D, V):
                        for r in M:
                            r[j] -= q * r[t]
                if D[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def invariant_factors(A) -> list:
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(A) -> list:
    """Row-style HNF of the lattice spanned by the rows of ``A`` (zero rows dropped).

    Upper triangular in echelon form with positive pivots; entries above a
    pivot lie in ``[0, pivot)``.
    """
    H = [list(map(int, r)) for r in A]
    m = len(H)
    n = len(H[0]) if m else 0
    row = 0
    pivots = []
    for c in range(n):
        if row == m:
            break
        for i in range(row + 1, m):
            if H[i][c]:
                g, x, y = _xgcd(H[row][c], H[i][c])
                a, b = H[row][c] // g, H[i][c] // g
                top = [x * u + y * v for u, v in zip(H[row], H[i])]
                bot = [a * v - b * u for u, v in zip(H[row], H[i])]
                H[row], H[i] = top, bot
        if H[row][c] == 0:
            continue
        if H[row][c] < 0:
            H[row] = [-x for x in H[row]]
        p = H[row][c]
        for i in range(row):
            q = H[i][c] // p
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[row])]
        pivots.append(c)
        row += 1
    return H[:row]


def lattice_basis(E) -> list:
    """A canonical (HNF) basis of the lattice generated by the rows of ``E``."""
    return hermite_normal_form(E)


def inverse_q(B) -> list:
    """Exact inverse of a square integer matrix, as ``Fraction`` entries."""
    n = len(B)
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(B)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [r[n:] for r in M]


def matmul(A, B) -> list:
    return [[sum(a * b for a, b in zip(r, col)) for col in zip(*B)] for r in A]
