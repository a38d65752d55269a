"""Symbolic support vectors, rank over Q(x) and transformal essentiality.

A monomial ``prod y_j^(k)^e`` is encoded per main variable as the
univariate polynomial ``sum_k e * x**k``; stacking such vectors gives a
matrix whose rank over Q(x) is the difference transcendence degree of
the monomials.  Univariate polynomials are tuples of ``Fraction``
coefficients, lowest degree first, with no trailing zeros.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .diffpoly import DiffPoly, GenericSystem, VarTable, mono_div
from .errors import NotEssentialError

# ---------------------------------------------------------------------------
# univariate polynomials over Q

ZERO = ()


def up_trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(Fraction(c) for c in a)


def up_deg(a) -> int:
    return len(a) - 1


def up_add(a, b):
    n = max(len(a), len(b))
    return up_trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def up_neg(a):
    return tuple(-c for c in a)


def up_sub(a, b):
    return up_add(a, up_neg(b))


def up_mul(a, b):
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return up_trim(out)


def up_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = list(up_trim(r))
    return up_trim(q), up_trim(r)


def up_eval(a, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# support vectors

def support_vector(m, n: int) -> tuple:
    """Per main variable ``j``: ``sum_k exponent(y_j^(k)) * x**k``."""
    acc = [dict() for _ in range(n)]
    for (v, s), e in m:
        if v >= n:
            raise ValueError("support vectors are defined for main variables only")
        acc[v][s] = acc[v].get(s, 0) + e
    out = []
    for d in acc:
        if not d:
            out.append(ZERO)
            continue
        coeffs = [0] * (max(d) + 1)
        for s, e in d.items():
            coeffs[s] = e
        out.append(up_trim(coeffs))
    return tuple(out)


def rank_qx(rows) -> int:
    """Rank over Q(x) by Euclidean row reduction.

    Uses row swaps, row updates ``r_i += f(x) r_j`` and column swaps.  The
    pivot is always a nonzero entry of minimal degree in the active block;
    the active column is then reduced by Euclidean division until only the
    pivot survives, giving an upper-triangular form.
    """
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    top = 0
    while top < len(M) and top < ncols:
        best = None
        for i in range(top, len(M)):
            for j in range(top, ncols):
                if M[i][j] and (best is None or up_deg(M[i][j]) < best[0]):
                    best = (up_deg(M[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        M[top], M[pi] = M[pi], M[top]
        for r in M:
            r[top], r[pj] = r[pj], r[top]
        while True:
            dirty = False
            for i in range(top + 1, len(M)):
                if M[i][top]:
                    q, _ = up_divmod(M[i][top], M[top][top])
                    M[i] = [up_sub(a, up_mul(q, b)) for a, b in zip(M[i], M[top])]
                    if M[i][top]:
                        dirty = True
            if not dirty:
                break
            # a remainder of smaller degree becomes the new pivot
            pi = min((i for i in range(top + 1, len(M)) if M[i][top]),
                     key=lambda i: up_deg(M[i][top]))
            M[top], M[pi] = M[pi], M[top]
        rank += 1
        top += 1
    return rank


def dtrdeg_monomials(B, n: int) -> int:
    """Difference transcendence degree of a list of monomials over Q."""
    return rank_qx([support_vector(m, n) for m in B])


# ---------------------------------------------------------------------------
# generic support matrices

class GenericSupportMatrix:
    """Rows ``w_i = sum_k u_ik * beta_ik`` for the polynomials in ``rows_of``.

    ``entries[r][j]`` maps a coefficient key ``(i, k)`` to the univariate
    polynomial coefficient of ``u_ik`` in column ``j``.
    """

    def __init__(self, sys: GenericSystem, rows_of=None):
        self.sys = sys
        self.rows_of = list(range(len(sys))) if rows_of is None else list(rows_of)
        n = sys.n
        self.n = n
        self.entries = []
        for i in self.rows_of:
            row = [dict() for _ in range(n)]
            for k in range(1, len(sys.supports[i])):
                beta = support_vector(sys.quotient(i, k), n)
                for j in range(n):
                    if beta[j]:
                        row[j][(i, k)] = beta[j]
            self.entries.append(row)

    def specialize(self, values) -> list:
        """Plug numbers in for the ``u``; returns a matrix over Q[x]."""
        out = []
        for row in self.entries:
            out.append([_combine(cell, values) for cell in row])
        return out


def _combine(cell, values):
    acc = ZERO
    for key, poly in cell.items():
        acc = up_add(acc, tuple(values[key] * c for c in poly))
    return acc


def _random_values(sys: GenericSystem, rng: random.Random):
    return {(i, k): rng.randint(1, 2 ** 31)
            for i in range(len(sys)) for k in range(len(sys.supports[i]))}


def rank_generic(M: GenericSupportMatrix, mode: str = "probabilistic", trials: int = 3,
                 rng: random.Random | None = None) -> int:
    """Rank over Q(u)(x).

    ``probabilistic`` specialises every ``u`` to an integer in
    ``[1, 2**31]`` and keeps the largest rank over ``trials`` draws; each
    draw is a lower bound on the true rank.  ``exact`` keeps the ``u`` as
    indeterminates and eliminates without division.
    """
    if mode == "exact":
        return _rank_exact(M)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = rng or random.Random(0)
    best = 0
    for _ in range(trials):
        best = max(best, rank_qx(M.specialize(_random_values(M.sys, rng))))
        if best == min(len(M.entries), M.n):
            break
    return best


def _rank_exact(M: GenericSupportMatrix) -> int:
    # entries become polynomials in u_ik and x (variable index -1 for x)
    idx = {}
    for row in M.entries:
        for cell in row:
            for key in cell:
                idx.setdefault(key, len(idx))
    X = (-1, 0)

    def to_poly(cell):
        p = DiffPoly()
        for key, up in cell.items():
            u = DiffPoly.var(idx[key])
            for deg, c in enumerate(up):
                if c:
                    p = p + u * DiffPoly.monomial(((X, deg),) if deg else (), c)
        return p

    A = [[to_poly(c) for c in row] for row in M.entries]
    return rank_fraction_free(A)


def rank_fraction_free(A) -> int:
    """Rank of a matrix over an integral domain of :class:`DiffPoly` entries.

    Cross-multiplication elimination (no division), fine for small matrices.
    """
    A = [list(r) for r in A]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if not A[r][c].is_zero():
                if piv is None or len(A[r][c]) < len(A[piv][c]):
                    piv = r
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for r in range(rank + 1, rows):
            a = A[r][c]
            if not a.is_zero():
                A[r] = [p * x - a * y for x, y in zip(A[r], A[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def is_essential(sys: GenericSystem, mode: str = "probabilistic", trials: int = 3,
                 rng: random.Random | None = None) -> bool:
    """Laurent transformal essentiality: the full generic matrix has rank n."""
    return rank_generic(GenericSupportMatrix(sys), mode, trials, rng) == sys.n


def super_essential_subset(sys: GenericSystem, mode: str = "probabilistic", trials: int = 3,
                           rng: random.Random | None = None, check_unique: bool = False) -> tuple:
    """The unique subset with rank deficiency one whose proper subsets have full rank.

    Subsets are scanned by increasing size, then lexicographically; the
    first one with deficiency one is minimal.  ``check_unique`` scans all
    subsets and confirms no other minimal deficient subset exists.
    """
    rng = rng or random.Random(0)
    if not is_essential(sys, mode, trials, rng):
        raise NotEssentialError("system is not Laurent transformally essential")
    found = None
    size = len(sys)
    for card in range(1, size + 1):
        for T in itertools.combinations(range(size), card):
            r = rank_generic(GenericSupportMatrix(sys, T), mode, trials, rng)
            if card - r == 1:
                found = T
                break
        if found:
            break
    if found is None:
        raise NotEssentialError("no super-essential subset found")
    if check_unique:
        for card in range(1, size + 1):
            for T in itertools.combinations(range(size), card):
                if T == found:
                    continue
                r = rank_generic(GenericSupportMatrix(sys, T), mode, trials, rng)
                if card - r == 1 and all(
                        rank_generic(GenericSupportMatrix(sys, J), mode, trials, rng) == len(J)
                        for J in itertools.combinations(T, card - 1)):
                    raise AssertionError(f"second super-essential subset {T} besides {found}")
    return found


# ---------------------------------------------------------------------------
# algebraic support matrices (no transforms)

def exponent_vector(m, columns: dict) -> list:
    vec = [0] * len(columns)
    for key, e in m:
        vec[columns[key]] += e
    return vec


def specialised_rows(slots_per_row, rng: random.Random) -> list:
    """Integer rows ``sum_k c_k * alpha_k`` with random ``c_k`` in ``[1, 2**31]``.

    ``slots_per_row`` is a list of lists of integer exponent vectors (the
    zero vector of the designated slot may be omitted).
    """
    out = []
    for slots in slots_per_row:
        width = len(slots[0]) if slots else 0
        row = [0] * width
        for alpha in slots:
            c = rng.randint(1, 2 ** 31)
            for j, a in enumerate(alpha):
                if a:
                    row[j] += c * a
        out.append(row)
    return out
