import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffres.diffpoly import NEG_INF, DiffPoly
from diffres.engine import make_certificate, search_resultant, specialise, verify_certificate
from diffres.errors import BoundsExceededError, DiffresError, NotEssentialError, SizeGuardExceeded
from diffres.reduction import (AlgPoly, AlgPolySystem, algebraic_sparse_resultant, dense_degree_report,
                               dense_resultant, dense_system, essential_subset_minimal_ranking,
                               from_prolongation, mixed_volume_degrees, resultant_via_reduction,
                               smith_transform, specialize_to_essential_vars)
from diffres.support import super_essential_subset
from diffres.textio import parse_poly, parse_system
from _systems import (EX0, EX1, EX2, EX2N, LINEAR, LINEAR_PAIR, PIPELINE, PIPELINE_A, PIPELINE_B,
                      PIPELINE_C, ROOT_SYSTEM)

INF = NEG_INF


def P(text, sys):
    return parse_poly(text, sys.vars)[0]


def c(v):
    return DiffPoly.var(v, 0)


def alg(polys, nvars):
    """Build an AlgPolySystem; ``polys`` lists exponent vectors after the constant slot."""
    out, v = [], 0
    for label, exps in enumerate(polys):
        slots = [((v, 0), (0,) * nvars)]
        v += 1
        for a in exps:
            slots.append(((v, 0), tuple(a)))
            v += 1
        out.append(AlgPoly((label, 0), tuple(slots)))
    return AlgPolySystem(tuple(("x", j) for j in range(nvars)), tuple(out))


# -- the pipeline example, stage by stage

@pytest.fixture(scope="module")
def pipeline():
    s = parse_system(PIPELINE)
    return s, resultant_via_reduction(s)


def test_pipeline_stages(pipeline):
    s, cert = pipeline
    st_ = cert.meta["stages"]
    assert st_["T"] == (0, 1, 2)
    assert st_["K"] == [3, 2, 3, None]
    assert len(st_["prolongation"]) == 11
    assert st_["essential_subset"] == [(0, 1), (1, 0), (2, 1)]
    assert st_["kept"] == [(0, 1), (0, 2)]          # y1@1, y1@2
    assert st_["dropped"] == [(1, 1), (1, 2), (2, 1)]  # y2@1, y2@2, y3@1
    assert st_["smith"] == [[((0, 1), 2)], [((0, 2), 2)]]
    assert st_["smith_record"].invariant_factors == [2, 2]
    assert cert.meta["subset_blocks_match"]


def test_pipeline_resultant(pipeline):
    s, cert = pipeline
    A, B, C = (P(t, s) for t in (PIPELINE_A, PIPELINE_B, PIPELINE_C))
    u10, u11, u12 = (P(t, s) for t in ("u10", "u11", "u12"))
    # derived by Cramer's rule on Q0, Q2 and substitution into Q1
    corrected = u10 * A * A + u11 * B * B - u12 * C * A
    assert cert.resultant in (corrected, -corrected)
    assert cert.orders == (1, 0, 1, INF)


def test_pipeline_degrees_are_mixed_volumes(pipeline):
    s, cert = pipeline
    system = cert.meta["stages"]["system"]
    assert mixed_volume_degrees(system) == [2, 1, 2]
    for p, d in zip(system.polys, cert.meta["stages"]["degrees"]):
        assert cert.resultant.degree_in(p.coefficient_keys()) == d


# -- minimal-ranking essential subsets

def test_three_linear_forms_full_set():
    S = alg([[(1, 0), (0, 1)]] * 3, 2)
    assert essential_subset_minimal_ranking(S) == (0, 1, 2)


def test_ex2_prolongation_excludes_polynomials():
    s = parse_system(EX2)
    A = from_prolongation(s, [1, 0, 0])
    assert A.labels == [(0, 0), (0, 1), (1, 0), (2, 0)]
    subset = essential_subset_minimal_ranking(A, mode="exact")
    assert [A.labels[t] for t in subset] == [(0, 1), (1, 0)]
    # the coefficients of the excluded P_0 and P_2 do not occur in the resultant
    R = search_resultant(s).resultant
    used = {k for k in R.keys()}
    for t in set(range(4)) - set(subset):
        assert not used & set(A.polys[t].coefficient_keys())


def test_no_essential_subset():
    with pytest.raises(NotEssentialError):
        essential_subset_minimal_ranking(alg([[(1, 0)], [(0, 1)]], 2))
    with pytest.raises(NotEssentialError):
        essential_subset_minimal_ranking(alg([[(1, 0)], [(0, 1)]], 2), method="circuit")
    with pytest.raises(ValueError):
        essential_subset_minimal_ranking(alg([[(1, 0)], [(0, 1)]], 2), method="other")


exps = st.lists(st.tuples(st.integers(-1, 2), st.integers(-1, 2), st.integers(-1, 2))
                .filter(any), min_size=1, max_size=2, unique=True)


@settings(max_examples=150)
@given(st.lists(exps, min_size=2, max_size=5), st.integers(0, 100))
def test_circuit_matches_exhaustive(rows, seed):
    S = alg(rows, 3)
    results = []
    for method in ("exhaustive", "circuit"):
        for mode in ("exact", "probabilistic"):
            try:
                results.append(essential_subset_minimal_ranking(S, method, mode, seed))
            except NotEssentialError:
                results.append(None)
    assert len(set(results)) == 1


# -- specialisation

def test_specialise_pair_in_three_vars():
    S = alg([[(1, 1, 1)], [(2, 2, 2)]], 3)
    out, kept, dropped = specialize_to_essential_vars(S, mode="exact")
    assert kept == [("x", 0)] and dropped == [("x", 1), ("x", 2)]
    assert out.support_vectors() == [[[1]], [[2]]]


def test_specialise_identity_when_variable_essential():
    S = alg([[(1, 0), (0, 1)]] * 3, 2)
    out, kept, dropped = specialize_to_essential_vars(S)
    assert out.polys == S.polys and dropped == []


def test_specialise_requires_essential():
    with pytest.raises(NotEssentialError):
        specialize_to_essential_vars(alg([[(1, 0)], [(0, 1)]], 2))


# -- Smith transform

def test_smith_even_exponents():
    S = alg([[(2,)], [(4,)]], 1)
    out, rec = smith_transform(S)
    assert rec.describe() == [[(("x", 0), 2)]]
    assert out.support_vectors() == [[[1]], [[2]]]


def test_smith_identity():
    S = alg([[(1, 0), (0, 1)]] * 3, 2)
    out, rec = smith_transform(S)
    assert rec.is_identity() and out.support_vectors() == S.support_vectors()


def test_smith_degenerate_lattice():
    with pytest.raises(DiffresError, match="degenerate lattice"):
        smith_transform(alg([[(1, 1)], [(2, 2)]], 2))


def test_system_validation():
    with pytest.raises(ValueError):
        AlgPolySystem((("x", 0),), (AlgPoly((0, 0), (((0, 0), (0,)),)),))
    with pytest.raises(ValueError):
        AlgPolySystem((("x", 0),), (AlgPoly((0, 0), (((0, 0), (1,)), ((1, 0), (0,)))),))
    with pytest.raises(ValueError):
        AlgPolySystem((("x", 0),), (AlgPoly((0, 0), (((0, 0), (0,)), ((1, 0), (1, 1)))),))


# -- algebraic sparse resultant

def test_sylvester_2x2():
    R, degs = algebraic_sparse_resultant(alg([[(1,)], [(1,)]], 1))
    a0, a1, b0, b1 = c(0), c(1), c(2), c(3)
    assert R in (a0 * b1 - a1 * b0, a1 * b0 - a0 * b1)
    assert degs == [1, 1]


def test_three_linear_forms_determinant():
    R, degs = algebraic_sparse_resultant(alg([[(1, 0), (0, 1)]] * 3, 2))
    m = [[c(3 * i + j) for j in range(3)] for i in range(3)]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    assert R in (det, -det)
    assert degs == [1, 1, 1]


def test_quadratic_pair():
    # c0 + c1 x and d0 + d1 x^2: x = -c0/c1 gives d0 c1^2 + d1 c0^2
    R, degs = algebraic_sparse_resultant(alg([[(1,)], [(2,)]], 1))
    expect = c(2) * c(1) * c(1) + c(3) * c(0) * c(0)
    assert R in (expect, -expect) and degs == [2, 1]


def test_algebraic_scan_without_degrees():
    S = alg([[(1,)], [(2,)]], 1)
    R, degs = algebraic_sparse_resultant(S, degrees=[1, 1])
    assert degs == [2, 1]
    with pytest.raises(BoundsExceededError):
        algebraic_sparse_resultant(S, degrees=[1, 1], cap=2)
    with pytest.raises(NotEssentialError):
        algebraic_sparse_resultant(alg([[(1,)]], 1))


# -- dense systems

def test_dense_linear_order_one():
    cert, report = dense_resultant(1, (0, 1), (1, 1))
    s = dense_system(1, (0, 1), (1, 1))
    assert report["orders"] == [1, 0] and report["variables"] == 2
    assert cert.orders == (1, 0)
    # determinant of the three prolonged linear forms in (1, y, y@1)
    det = P("u00*u01@1*u11 + u00@1*u01*u12 - u01*u01@1*u10", s)
    assert cert.resultant in (det, -det)
    # the two-term candidate ignores the y@1 term of P_1 and is not in the ideal
    two_term = make_certificate(P("u10*u01@1 - u11*u00@1", s), s)
    assert not verify_certificate(two_term, s)["vanishing"]


def test_dense_degree_report_example():
    r = dense_degree_report(1, (1, 1), (2, 2))
    assert r["cap"] == 81
    assert r["orders"] == [1, 1]
    assert r["block_degrees"] == [16, 16] and r["degree"] == 32
    assert set(r["layer_degrees"].values()) == {8}


def test_dense_size_guard():
    with pytest.raises(SizeGuardExceeded) as info:
        dense_resultant(1, (1, 1), (2, 2))
    assert info.value.report["degree"] == 32


def test_dense_validation():
    with pytest.raises(ValueError):
        dense_system(1, (0,), (1, 1))
    with pytest.raises(ValueError):
        dense_system(1, (0, -1), (1, 1))


# -- agreement with the ansatz engine

@pytest.mark.parametrize("text", [EX0, EX1, EX2, EX2N, LINEAR, LINEAR_PAIR, ROOT_SYSTEM])
def test_cross_engine(text):
    s = parse_system(text)
    a = search_resultant(s)
    b = resultant_via_reduction(s)
    assert a.resultant == b.resultant and a.orders == b.orders and a.degree == b.degree
    assert b.meta["subset_blocks_match"]
    system = b.meta["stages"]["system"]
    for p, d in zip(system.polys, b.meta["stages"]["degrees"]):
        assert b.resultant.degree_in(p.coefficient_keys()) == d


@pytest.mark.parametrize("text", [EX0, EX1, EX2, EX2N, LINEAR, PIPELINE])
def test_super_essential_unique(text):
    s = parse_system(text)
    assert super_essential_subset(s, "exact", check_unique=True)


def test_subset_methods_agree_on_pipeline():
    s = parse_system(PIPELINE)
    a = resultant_via_reduction(s, subset_method="exhaustive")
    b = resultant_via_reduction(s, subset_method="circuit", mode="exact")
    assert a.resultant == b.resultant


_PAIRS = {}


def _pair(text):
    if text not in _PAIRS:
        s = parse_system(text)
        _PAIRS[text] = (s, search_resultant(s), resultant_via_reduction(s))
    return _PAIRS[text]


@settings(max_examples=60)
@given(st.sampled_from([EX0, EX2, EX2N, ROOT_SYSTEM]), st.integers(0, 10 ** 6), st.booleans())
def test_same_vanishing_on_specialisations(text, seed, planted):
    s, a, b = _pair(text)
    rng = random.Random(seed)
    v = {(i, k): Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4))
         for i in range(len(s)) for k in range(len(s.supports[i]))}
    if planted:
        from diffres.diffpoly import evaluate
        y = [Fraction(rng.randint(1, 5)) for _ in range(s.n)]
        for i in range(len(s)):
            acc = 0
            for k in range(1, len(s.supports[i])):
                q = DiffPoly.monomial(s.quotient(i, k))
                acc += v[(i, k)] * evaluate(q, {key: y[key[0]] for key in q.keys()})
            v[(i, 0)] = -acc
    za = specialise(a.resultant, s, v) == 0
    zb = specialise(b.resultant, s, v) == 0
    assert za == zb
    if planted:
        assert za
