import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diffres.diffpoly import GenericSystem, mono, mono_shift
from diffres.errors import NotEssentialError
from diffres.linalg import SparseMatrixQ, rank_q
from diffres.support import (GenericSupportMatrix, dtrdeg_monomials, is_essential, rank_generic,
                             rank_qx, super_essential_subset, support_vector, up_add, up_eval,
                             up_mul, up_trim)
from diffres.textio import parse_system
from _systems import EX1, EX2, NOT_ESSENTIAL, PIPELINE

ONE = (1,)


def F(*c):
    return up_trim([Fraction(x) for x in c])


def test_support_vectors():
    assert support_vector(mono({(0, 0): 1, (1, 0): 1}), 2) == (ONE, ONE)
    assert support_vector(mono({(0, 2): 1, (1, 3): 1}), 2) == (F(0, 0, 1), F(0, 0, 0, 1))
    assert support_vector((), 2) == ((), ())
    with pytest.raises(ValueError):
        support_vector(mono({(3, 0): 1}), 2)


def test_rank_qx_examples():
    assert rank_qx([[F(1), F(1)], [F(0, 1), F(0, 1)]]) == 1
    assert rank_qx([[F(1), F(1)], [F(1), F(0, 1)]]) == 2
    assert rank_qx([[(), ()], [(), ()]]) == 0


def test_dtrdeg():
    assert dtrdeg_monomials([mono({(0, 0): 1, (1, 0): 1}), mono({(1, 0): 1})], 2) == 2
    assert dtrdeg_monomials([mono({(0, 0): 1}), mono({(0, 1): 1}), mono({(0, 2): 1})], 1) == 1
    assert dtrdeg_monomials([()], 1) == 0


def test_generic_rank_ex22():
    M = GenericSupportMatrix(parse_system(EX2))
    assert rank_generic(M, "exact") == 2
    assert rank_generic(M, "probabilistic") == 2


def test_single_row():
    M = GenericSupportMatrix(parse_system(EX2), [1])
    assert rank_generic(M, "exact") == 1


def test_probabilistic_matches_exact_on_random_4x3():
    rng = random.Random(7)
    for _ in range(5):
        supports = []
        for _ in range(4):
            monos = [()]
            while len(monos) < 3:
                m = mono({(rng.randrange(3), rng.randrange(3)): rng.randint(-2, 2) for _ in range(2)})
                if m not in monos:
                    monos.append(m)
            supports.append(monos)
        s = GenericSystem.from_supports(["y1", "y2", "y3"], supports)
        M = GenericSupportMatrix(s)
        assert rank_generic(M, "probabilistic", rng=random.Random(1)) == rank_generic(M, "exact")


def test_essential_examples():
    assert is_essential(parse_system(EX2), "exact")
    assert is_essential(parse_system(EX1), "exact")
    assert not is_essential(parse_system(NOT_ESSENTIAL), "exact")
    # y2 absent everywhere
    assert not is_essential(parse_system("u00 + u01*y1 ; u10 + u11*y1@1 ; u20 + u21*y1^2",
                                         main=["y1", "y2"]), "exact")


def test_super_essential():
    assert super_essential_subset(parse_system(EX2), "exact", check_unique=True) == (0, 1)
    assert super_essential_subset(parse_system(PIPELINE), "exact", check_unique=True) == (0, 1, 2)
    s = parse_system(EX1)
    assert super_essential_subset(s, "exact") == (0, 1, 2)
    # derived: every 2-subset has full rank
    for J in itertools.combinations(range(3), 2):
        assert rank_generic(GenericSupportMatrix(s, J), "exact") == 2
    with pytest.raises(NotEssentialError):
        super_essential_subset(parse_system(NOT_ESSENTIAL), "exact")


@pytest.mark.parametrize("text", [EX2, PIPELINE, EX1])
def test_super_essential_proper_subsets_full_rank(text):
    s = parse_system(text)
    T = super_essential_subset(s, "exact")
    for size in range(1, len(T)):
        for J in itertools.combinations(T, size):
            assert rank_generic(GenericSupportMatrix(s, J), "exact") == size


# -- properties

upoly = st.lists(st.integers(-3, 3), max_size=4).map(lambda c: F(*c))
matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(upoly, min_size=c, max_size=c), min_size=1, max_size=4))


def _rank_by_points(M):
    # a nonzero r x r minor has degree <= 3r <= 12, so 13 points suffice
    best = 0
    for x in range(13):
        rows = [[up_eval(e, x) for e in r] for r in M]
        best = max(best, rank_q(SparseMatrixQ.from_rows(rows, cols=len(M[0]))))
    return best


@given(matrices)
def test_rank_qx_vs_specialisation(M):
    assert rank_qx(M) == _rank_by_points(M)


@given(matrices, st.randoms(use_true_random=False))
def test_rank_qx_elementary_invariance(M, rnd):
    r = rank_qx(M)
    A = [list(row) for row in M]
    for _ in range(4):
        op = rnd.randrange(3)
        if op == 0 and len(A) > 1:
            i, j = rnd.sample(range(len(A)), 2)
            A[i], A[j] = A[j], A[i]
        elif op == 1 and len(A) > 1:
            i, j = rnd.sample(range(len(A)), 2)
            f = F(*[rnd.randint(-2, 2) for _ in range(2)])
            A[i] = [up_add(a, up_mul(f, b)) for a, b in zip(A[i], A[j])]
        elif op == 2 and len(A[0]) > 1:
            i, j = rnd.sample(range(len(A[0])), 2)
            for row in A:
                row[i], row[j] = row[j], row[i]
    assert rank_qx(A) == r


@given(st.lists(st.lists(st.tuples(st.tuples(st.integers(0, 1), st.integers(0, 2)),
                                   st.integers(-2, 2)), max_size=3).map(mono),
                min_size=1, max_size=4),
       st.integers(0, 3))
def test_dtrdeg_shift_invariance(B, k):
    assert dtrdeg_monomials([mono_shift(m, k) for m in B], 2) == dtrdeg_monomials(B, 2)
