"""Order matrices, Jacobi numbers and the order bounds for the resultant search.

``NEG_INF`` marks an absent variable; Python's float infinity saturates
under addition and compares correctly with ints, and it is the only
non-integer value that ever appears in these matrices.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .diffpoly import NEG_INF, GenericSystem, order_stats
from .errors import NotEssentialError
from .support import is_essential, super_essential_subset

BRUTE_FORCE_LIMIT = 8


def _is_inf(x) -> bool:
    return x == NEG_INF


def _jacobi_brute(A, rows: int, cols: int) -> float:
    k = min(rows, cols)
    if k == 0:
        return 0
    best = NEG_INF
    if rows <= cols:
        for chosen in itertools.permutations(range(cols), k):
            s = sum(A[i][chosen[i]] for i in range(k))
            best = max(best, s)
    else:
        for chosen in itertools.permutations(range(rows), k):
            s = sum(A[chosen[j]][j] for j in range(k))
            best = max(best, s)
    return best


def _jacobi_assignment(A, rows: int, cols: int) -> float:
    if min(rows, cols) == 0:
        return 0
    finite = [x for r in A for x in r if not _is_inf(x)]
    if not finite:
        return NEG_INF
    # any matching that avoids forbidden cells beats every one that uses one
    span = max(abs(x) for x in finite) + 1
    forbid = -(span * (min(rows, cols) + 1) * 2)
    W = np.array([[forbid if _is_inf(x) else x for x in r] for r in A], dtype=np.int64)
    ri, ci = linear_sum_assignment(W, maximize=True)
    if any(_is_inf(A[i][j]) for i, j in zip(ri, ci)):
        return NEG_INF
    return int(sum(A[i][j] for i, j in zip(ri, ci)))


def jacobi_number(A, method: str = "auto"):
    """Maximal diagonal sum over all ``k x k`` submatrices, ``k = min(rows, cols)``.

    A ``NEG_INF`` entry makes any sum containing it ``NEG_INF``.  The
    ``auto`` method enumerates permutations when ``k <= 8`` and solves a
    maximum-weight assignment otherwise.
    """
    A = [list(r) for r in A]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    k = min(rows, cols)
    if method == "auto":
        method = "brute" if k <= BRUTE_FORCE_LIMIT else "assignment"
    if method == "brute":
        return _jacobi_brute(A, rows, cols)
    if method == "assignment":
        return _jacobi_assignment(A, rows, cols)
    raise ValueError(f"unknown method {method!r}")


def order_matrix(sys: GenericSystem) -> list:
    """``s_ij = ord(norm(P_i), y_j)``."""
    return [[order_stats(sys.norm(i), j)[0] for j in range(sys.n)] for i in range(len(sys))]


def delete_row(A, i) -> list:
    return [r for t, r in enumerate(A) if t != i]


@dataclass
class BoundReport:
    """All order bounds; index ``i`` refers to polynomial ``P_i``."""

    order_matrix: list
    J: list
    lowest_shift: list  # o_j: minimal shift of y_j over all norm(P_i)
    gamma: int
    J_modified: list  # J_i - gamma, or NEG_INF
    T: tuple
    J_T: list  # Jac((A_T) with row i deleted) for i in T, NEG_INF otherwise
    lord: list  # s_i for i in T
    s_total: int
    s_max: int
    J_tilde: list
    J_under: list
    final: list
    clamped: list = field(default_factory=list)

    def as_dict(self) -> dict:
        def enc(x):
            if isinstance(x, (list, tuple)):
                return [enc(y) for y in x]
            return None if _is_inf(x) else x
        return {k: enc(v) for k, v in self.__dict__.items()}


def search_bounds(sys: GenericSystem, mode: str = "probabilistic",
                  rng: random.Random | None = None) -> BoundReport:
    """Per-block upper bounds on the orders of the sparse difference resultant.

    The final bound is the minimum of ``J_i``, ``J_i - gamma``, the
    super-essential bound and ``J_i - s + m``; it is ``NEG_INF`` for blocks
    outside the super-essential subset.  A negative ``J_i - gamma`` is
    clamped to 0 and the index recorded in ``clamped``.
    """
    rng = rng or random.Random(0)
    if not is_essential(sys, mode, rng=rng):
        raise NotEssentialError("system is not Laurent transformally essential")
    A = order_matrix(sys)
    size = len(sys)
    J = [jacobi_number(delete_row(A, i)) for i in range(size)]

    lowest = []
    for j in range(sys.n):
        lows = [order_stats(sys.norm(i), j)[1] for i in range(size)]
        lows = [x for x in lows if not _is_inf(x)]
        lowest.append(min(lows) if lows else 0)
    gamma = sum(lowest)
    J_mod = [NEG_INF if _is_inf(x) else x - gamma for x in J]

    T = super_essential_subset(sys, mode, rng=rng)
    A_T = [A[i] for i in T]
    J_T = [NEG_INF] * size
    for pos, i in enumerate(T):
        J_T[i] = jacobi_number(delete_row(A_T, pos))

    lord = [NEG_INF] * size
    for i in T:
        lows = [order_stats(sys.norm(i), j)[1] for j in range(sys.n)]
        lows = [x for x in lows if not _is_inf(x)]
        lord[i] = min(lows) if lows else 0
    s_total = sum(lord[i] for i in T)
    s_max = max(lord[i] for i in T)
    J_tilde = [NEG_INF] * size
    J_under = [NEG_INF] * size
    for i in T:
        J_tilde[i] = J[i] - s_total + lord[i]
        J_under[i] = J[i] - s_total + s_max

    final = [NEG_INF] * size
    clamped = []
    for i in T:
        if _is_inf(J[i]):
            continue
        b = min(J[i], J_mod[i], J_T[i], J_under[i])
        if b < 0:
            clamped.append(i)
            b = 0
        final[i] = b
    return BoundReport(A, J, lowest, gamma, J_mod, tuple(T), J_T, lord, s_total, s_max,
                       J_tilde, J_under, final, clamped)


def constraint_holds(sys: GenericSystem, K) -> bool:
    """``sum k_i >= sum_j max_i (s_ij + k_i)``, skipping absent entries."""
    A = order_matrix(sys)
    rhs = 0
    for j in range(sys.n):
        vals = [A[i][j] + K[i] for i in range(len(A)) if not _is_inf(A[i][j])]
        if vals:
            rhs += max(vals)
    return sum(K) >= rhs
