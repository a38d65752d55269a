"""Ansatz search for the sparse difference resultant.

The search walks order vectors ``h`` by increasing ``sum(h)`` and, for
each, degrees ``d = 1, 2, ...`` up to ``prod (m_i+1)^(h_i+1)``.  At each
step an unknown homogeneous polynomial of degree ``d`` in the coefficient
variables up to the orders ``h`` is constrained by a linear system; the
first nonzero solution is the resultant.

Two linear systems are available:

``generic-zero`` (default)
    The candidate must vanish after every ``u_i0^(r)`` is replaced by
    ``-sum_k u_ik^(r) * (M_ik/M_i0)^(r)``.  The polynomials vanishing there
    are exactly the elimination ideal, and the unknowns are only the
    candidate's coefficients.
``representation``
    The candidate times a monomial multiplier must be a combination of
    the prolonged ``norm(P_i)^(j)`` with multipliers of bounded degree.
    Exponentially larger; practical only for tiny systems.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod

from .diffpoly import (NEG_INF, ONE, DiffPoly, GenericSystem, VarTable, evaluate, mono,
                       mono_degree, mono_div, mono_shift, order_stats, primitive_part,
                       transform, transformal_layers)
from .errors import BoundsExceededError, InternalConsistencyError, NotEssentialError
from .jacobi import search_bounds
from .linalg import SparseMatrixQ, nullspace_q, rank_integer_rows, rank_mod_p, rank_q
from .support import is_essential, specialised_rows


# ---------------------------------------------------------------------------
# certificates

@dataclass
class ResultantCertificate:
    """A normalised resultant with its orders, degree and check results."""

    resultant: DiffPoly
    vars: VarTable
    orders: tuple
    degree: int
    normalization: dict
    verification: dict | None = None
    cofactors: dict | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def effective_orders(self) -> tuple:
        return tuple(NEG_INF if o == NEG_INF else o - lo
                     for o, lo in zip(self.orders, self.lowest_orders))

    @property
    def lowest_orders(self) -> tuple:
        return tuple(block_order_range(self.resultant, self.vars, i)[1]
                     for i in range(len(self.vars.blocks)))


def block_order_range(p: DiffPoly, vars: VarTable, i: int):
    """``(ord, lord)`` of ``p`` in the coefficient block ``u_i``."""
    block = set(vars.block_vars(i))
    shifts = [s for v, s in p.keys() if v in block]
    if not shifts:
        return NEG_INF, NEG_INF
    return max(shifts), min(shifts)


def make_certificate(poly: DiffPoly, sys: GenericSystem, meta=None) -> ResultantCertificate:
    if poly.is_zero():
        raise InternalConsistencyError("resultant candidate is zero")
    if any(sys.vars.is_main(v) for v, _ in poly.keys()):
        raise InternalConsistencyError("resultant candidate involves main variables")
    sr, scale = primitive_part(poly)
    orders = tuple(block_order_range(sr, sys.vars, i)[0] for i in range(len(sys)))
    return ResultantCertificate(
        resultant=sr, vars=sys.vars, orders=orders, degree=sr.degree(),
        normalization={"scale": str(scale), "sign": "positive leading coefficient",
                       "content": "integer coprime"},
        meta=dict(meta or {}))


# ---------------------------------------------------------------------------
# prolongation and variable sets

@dataclass
class Prolongation:
    polys: list  # (i, k, transform(norm P_i, k))
    main_keys: set
    coeff_keys: set


def prolong(sys: GenericSystem, K) -> Prolongation:
    """``transform(norm(P_i), k)`` for ``0 <= k <= K_i`` (blocks with negative K skipped)."""
    out, mk, ck = [], set(), set()
    for i, Ki in enumerate(K):
        if Ki == NEG_INF or Ki < 0:
            continue
        for k in range(int(Ki) + 1):
            p = transform(sys.norm(i), k)
            out.append((i, k, p))
            for key in p.keys():
                (mk if sys.vars.is_main(key[0]) else ck).add(key)
    return Prolongation(out, mk, ck)


def retained(h) -> list:
    return [i for i, hi in enumerate(h) if hi != NEG_INF and hi >= 0]


def coefficient_keys(sys: GenericSystem, h) -> list:
    """``U = union of u_i^[h_i]`` as sorted shifted keys."""
    keys = []
    for i in retained(h):
        for r in range(h[i] + 1):
            for k in range(len(sys.supports[i])):
                keys.append(sys.coeff_key(i, k, r))
    return sorted(keys)


def layers(sys: GenericSystem, h) -> list:
    """``(i, r, keys)`` for every shift layer ``r`` of every retained block."""
    return [(i, r, [sys.coeff_key(i, k, r) for k in range(len(sys.supports[i]))])
            for i in retained(h) for r in range(h[i] + 1)]


def y_degree(sys: GenericSystem, i: int) -> int:
    """``m_i``: degree of ``norm(P_i)`` in the main variables."""
    return max(sum(e for (v, _), e in m if sys.vars.is_main(v)) for m, _ in sys.norm(i))


def degree_cap(sys: GenericSystem, h) -> int:
    return prod((y_degree(sys, i) + 1) ** (h[i] + 1) for i in retained(h))


# ---------------------------------------------------------------------------
# ansatz

def _compositions(total: int, mins: list):
    """Vectors ``v`` with ``sum(v) == total`` and ``v[t] >= mins[t]``."""
    rest = total - sum(mins)
    if rest < 0:
        return
    n = len(mins)
    if n == 0:
        if rest == 0:
            yield ()
        return
    for bars in itertools.combinations(range(rest + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars + (rest + n - 1,):
            parts.append(b - prev - 1)
            prev = b
        yield tuple(p + m for p, m in zip(parts, mins))


def _homogeneous(keys, d):
    for combo in itertools.combinations_with_replacement(keys, d):
        yield mono((k, 1) for k in combo)


def layer_degree_vectors(sys: GenericSystem, h, d: int):
    """Layer degree vectors summing to ``d`` whose top layer in each block is nonzero."""
    lay = layers(sys, h)
    mins = [1 if r == h[i] else 0 for i, r, _ in lay]
    return list(_compositions(d, mins))


def multihomogeneous_monomials(sys: GenericSystem, h, degrees) -> list:
    lay = layers(sys, h)
    per = [list(_homogeneous(keys, e)) for (_, _, keys), e in zip(lay, degrees)]
    out = []
    for parts in itertools.product(*per):
        m = ()
        for p in parts:
            m = m + p
        out.append(tuple(sorted(m)))
    return out


@dataclass
class Ansatz:
    monomials: list
    keys: list

    @property
    def unknowns(self) -> int:
        return len(self.monomials)


def build_ansatz(sys: GenericSystem, h, d: int, multihomog: bool = False) -> Ansatz:
    """Generic homogeneous polynomial of degree ``d`` in ``U``: one unknown per monomial.

    In multihomogeneous mode only monomials whose layer degrees form an
    admissible vector (see :func:`layer_degree_vectors`) are kept.
    """
    keys = coefficient_keys(sys, h)
    if not multihomog:
        monos = list(_homogeneous(keys, d))
    else:
        seen = set()
        for vec in layer_degree_vectors(sys, h, d):
            seen.update(multihomogeneous_monomials(sys, h, vec))
        monos = sorted(seen)
    return Ansatz(monos, keys)


# ---------------------------------------------------------------------------
# linear systems

def generic_zero_images(sys: GenericSystem, h) -> dict:
    """``u_i0^(r) -> -sum_{k>=1} u_ik^(r) * transform(M_ik/M_i0, r)``."""
    images = {}
    for i in retained(h):
        for r in range(h[i] + 1):
            img = DiffPoly()
            for k in range(1, len(sys.supports[i])):
                m = mono_shift(sys.quotient(i, k), r) + ()
                img = img - DiffPoly.monomial(tuple(sorted(m + (((sys.vars.coeff(i, k), r), 1),))))
            images[sys.coeff_key(i, 0, r)] = img
    return images


class _ImageCache:
    def __init__(self, images):
        self.images = images
        self.powers = {}

    def image(self, m) -> DiffPoly:
        term = DiffPoly.const(1)
        rest = []
        for key, e in m:
            if key in self.images:
                if (key, e) not in self.powers:
                    self.powers[(key, e)] = self.images[key] ** e
                term = term * self.powers[(key, e)]
            else:
                rest.append((key, e))
        return term.mul_monomial(tuple(rest)) if rest else term


def vanishing_system(monos, images) -> SparseMatrixQ:
    """Columns: images of the candidate monomials; rows: monomials of the images."""
    cache = _ImageCache(images)
    row_of: dict = {}
    entries = {}
    for col, m in enumerate(monos):
        for rm, c in cache.image(m).items():
            r = row_of.setdefault(rm, len(row_of))
            entries[(r, col)] = c
    return SparseMatrixQ(len(row_of), len(monos), entries)


@dataclass
class Multiplier:
    i: int
    j: int
    degree: int
    monomials: list


def multiplier_data(sys: GenericSystem, h) -> dict:
    """Constants of the representation system: ``m``, ``m_i``, ``m_i0``, pivots, ``H``."""
    size = len(sys)
    m_i = [y_degree(sys, i) for i in range(size)]
    pivot, m_i0 = [], []
    for i in range(size):
        M = sys.normaliser(i)
        degs = [mono_degree(mono(list(sys.supports[i][k]) + list(M))) for k in range(len(sys.supports[i]))]
        k0 = min(range(len(degs)), key=lambda k: (degs[k], k))
        pivot.append(k0)
        m_i0.append(degs[k0])
    s_i = [max(order_stats(sys.norm(i), j)[0] for j in range(sys.n)) for i in range(size)]
    I = retained(h)
    H = max(h[i] + s_i[i] for i in I)
    return {"m": max(m_i), "m_i": m_i, "m_i0": m_i0, "pivot": pivot, "H": int(H)}


def multiplier_degree(sys: GenericSystem, h, d: int, i: int, data=None) -> int:
    data = data or multiplier_data(sys, h)
    lift = sum((h[t] + 1) * data["m_i0"][t] for t in retained(h))
    return (data["m"] + 1 + lift) * d - data["m_i"][i] - 1


def _all_monomials(keys, max_deg):
    for deg in range(max_deg + 1):
        yield from _homogeneous(keys, deg)


def build_multipliers(sys: GenericSystem, h, d: int) -> list:
    """Generic multipliers ``H_ij`` (``i`` retained, ``j <= h_i``) in ``Y^[H]`` and ``U``."""
    data = multiplier_data(sys, h)
    keys = representation_keys(sys, h, data)
    out = []
    for i in retained(h):
        D = multiplier_degree(sys, h, d, i, data)
        monos = list(_all_monomials(keys, D)) if D >= 0 else []
        for j in range(h[i] + 1):
            out.append(Multiplier(i, j, D, monos))
    return out


def representation_keys(sys: GenericSystem, h, data=None) -> list:
    data = data or multiplier_data(sys, h)
    ys = [(j, t) for j in range(sys.n) for t in range(data["H"] + 1)]
    return sorted(ys) + coefficient_keys(sys, h)


@dataclass
class AssembledSystem:
    matrix: SparseMatrixQ
    ansatz: Ansatz
    c0: int  # number of candidate columns, which come first
    expected_rows: int | None = None
    expected_cols: int | None = None


def assemble_system(sys: GenericSystem, h, d: int, method: str = "generic-zero",
                    multihomog: bool = False, ansatz: Ansatz | None = None) -> AssembledSystem:
    """Linear system whose nullspace (restricted to the first ``c0`` columns) gives candidates."""
    ansatz = ansatz or build_ansatz(sys, h, d, multihomog)
    if method == "generic-zero":
        M = vanishing_system(ansatz.monomials, generic_zero_images(sys, h))
        return AssembledSystem(M, ansatz, ansatz.unknowns)
    if method != "representation":
        raise ValueError(f"unknown method {method!r}")
    data = multiplier_data(sys, h)
    keys = representation_keys(sys, h, data)
    lead = DiffPoly.const(1)
    for i in retained(h):
        N = mono(list(sys.supports[i][data["pivot"][i]]) + list(sys.normaliser(i)))
        for k in range(h[i] + 1):
            lead = lead * DiffPoly.monomial(mono_shift(N, k))
    lead = lead ** d
    columns = [lead.mul_monomial(m) for m in ansatz.monomials]
    for mult in build_multipliers(sys, h, d):
        shifted = transform(sys.norm(mult.i), mult.j)
        for m in mult.monomials:
            columns.append(-shifted.mul_monomial(m))
    row_of, entries = {}, {}
    for col, p in enumerate(columns):
        for rm, c in p.items():
            entries[(row_of.setdefault(rm, len(row_of)), col)] = c
    V = len(keys)
    d1 = (data["m"] + 1 + sum((h[t] + 1) * data["m_i0"][t] for t in retained(h))) * d
    expected_rows = comb(d1 + V, V)
    expected_cols = ansatz.unknowns + sum(
        (h[i] + 1) * comb(max(multiplier_degree(sys, h, d, i, data), -1) + V, V)
        for i in retained(h))
    M = SparseMatrixQ(max(expected_rows, len(row_of)), len(columns), entries)
    return AssembledSystem(M, ansatz, ansatz.unknowns, expected_rows, expected_cols)


# ---------------------------------------------------------------------------
# search

def _candidate_polys(system: AssembledSystem, prefilter: bool) -> list:
    M = system.matrix
    if prefilter and system.c0 == M.cols and rank_mod_p(M) == M.cols:
        return []
    basis = nullspace_q(M)
    proj = [v[:system.c0] for v in basis if any(v[:system.c0])]
    if not proj:
        return []
    if len(proj) > 1:
        # keep an independent set of projections
        chosen, rows = [], []
        for v in proj:
            trial = rows + [{j: x for j, x in enumerate(v) if x}]
            if rank_q(SparseMatrixQ.from_rows(trial, cols=system.c0)) == len(trial):
                rows, chosen = trial, chosen + [v]
        proj = chosen
    return [DiffPoly(zip(system.ansatz.monomials, v)) for v in proj]


def _consistent(polys: list) -> DiffPoly:
    if len(polys) == 1:
        return polys[0]
    import sympy

    gens, exprs = _to_sympy(polys)
    g = exprs[0]
    for e in exprs[1:]:
        g = sympy.gcd(g, e)
    if sympy.Poly(g, *gens).total_degree() == 0:
        raise InternalConsistencyError(
            f"{len(polys)} independent minimal candidates with constant gcd")
    return _from_sympy(g, gens)


def _to_sympy(polys):
    import sympy

    keys = sorted({k for p in polys for k in p.keys()})
    gens = sympy.symbols([f"x{v}_{s}" for v, s in keys])
    index = dict(zip(keys, gens))
    exprs = []
    for p in polys:
        e = sympy.Integer(0)
        for m, c in p.items():
            t = sympy.Rational(c.numerator, c.denominator)
            for k, x in m:
                t *= index[k] ** x
            e += t
        exprs.append(sympy.expand(e))
    return (gens, keys), exprs


def _from_sympy(g, gens_keys) -> DiffPoly:
    import sympy

    gens, keys = gens_keys
    P = sympy.Poly(g, *gens)
    out = {}
    for exps, c in P.terms():
        out[mono((k, e) for k, e in zip(keys, exps) if e)] = Fraction(int(c.p), int(c.q))
    return DiffPoly(out)


def order_vectors(bounds, o: int):
    """Vectors with ``sum == o`` under ``bounds`` in lexicographic order; ``NEG_INF`` stays fixed."""
    idx = retained(bounds)
    ranges = [range(int(bounds[i]) + 1) for i in idx]
    for combo in itertools.product(*ranges):
        if sum(combo) == o:
            h = [NEG_INF] * len(bounds)
            for i, v in zip(idx, combo):
                h[i] = v
            yield h


def prolonged_rank_deficient(sys: GenericSystem, h, trials: int = 3,
                             rng: random.Random | None = None) -> bool:
    """Whether ``{transform(P_i, r) : r <= h_i}`` has a rank-deficient support matrix.

    Deficiency is equivalent to the elimination ideal containing a nonzero
    polynomial in ``U`` of orders at most ``h``.  Each random draw gives a
    lower bound on the rank, so a full-rank draw is conclusive.
    """
    rng = rng or random.Random(0)
    rows_slots, keys = [], set()
    for i in retained(h):
        for r in range(h[i] + 1):
            slots = [mono_shift(sys.quotient(i, k), r) for k in range(1, len(sys.supports[i]))]
            rows_slots.append(slots)
            keys.update(k for m in slots for k, _ in m)
    cols = {k: j for j, k in enumerate(sorted(keys))}
    vecs = []
    for slots in rows_slots:
        v = []
        for m in slots:
            a = [0] * len(cols)
            for k, e in m:
                a[cols[k]] += e
            v.append(a)
        vecs.append(v)
    for _ in range(trials):
        rows = specialised_rows(vecs, rng)
        if rank_integer_rows(rows) == len(rows):
            return False
    return True


def search_resultant(sys: GenericSystem, *, multihomog: bool = True, method: str = "generic-zero",
                     rank_test: bool = True, prefilter: bool = True, seed: int = 0,
                     bounds=None, bounds_mode: str = "probabilistic") -> ResultantCertificate:
    """Search orders, then degrees, for the first nonzero candidate.

    Parameters
    ----------
    multihomog
        Solve one linear system per admissible layer-degree vector instead
        of one system per degree.
    method
        ``"generic-zero"`` or ``"representation"`` (see module docstring).
    rank_test
        Skip order vectors whose prolonged support matrix has full rank;
        no resultant can exist there.
    prefilter
        Skip linear systems whose rank modulo a large prime is already full.
    bounds
        Override for the per-block order bounds (default: ``search_bounds``).
    """
    rng = random.Random(seed)
    if not is_essential(sys, bounds_mode, rng=rng):
        raise NotEssentialError("system is not Laurent transformally essential")
    report = None
    if bounds is None:
        report = search_bounds(sys, bounds_mode, rng=rng)
        bounds = report.final
    total = sum(int(b) for b in bounds if b != NEG_INF and b >= 0)
    visited = []
    for o in range(total + 1):
        for h in order_vectors(bounds, o):
            if rank_test and not prolonged_rank_deficient(sys, h, rng=rng):
                visited.append((tuple(h), "full rank"))
                continue
            cap = degree_cap(sys, h)
            for d in range(1, cap + 1):
                found = _solve_at(sys, h, d, multihomog, method, prefilter)
                if found:
                    poly = _consistent(found)
                    meta = {"engine": "ansatz", "method": method, "multihomog": multihomog,
                            "h": tuple(h), "d": d, "cap": cap, "skipped": visited,
                            "bounds": None if report is None else report.as_dict()}
                    return make_certificate(poly, sys, meta)
            visited.append((tuple(h), f"no solution up to degree {cap}"))
    raise BoundsExceededError("bounds exceeded: no resultant found within the order bounds")


def _solve_at(sys, h, d, multihomog, method, prefilter) -> list:
    if method == "representation" or not multihomog:
        asm = assemble_system(sys, h, d, method, multihomog)
        return _candidate_polys(asm, prefilter)
    found = []
    images = generic_zero_images(sys, h)
    for vec in layer_degree_vectors(sys, h, d):
        monos = multihomogeneous_monomials(sys, h, vec)
        asm = AssembledSystem(vanishing_system(monos, images), Ansatz(monos, []), len(monos))
        found.extend(_candidate_polys(asm, prefilter))
    return found


# ---------------------------------------------------------------------------
# verification

def _random_rational(rng: random.Random, bits: int = 63) -> Fraction:
    num = rng.randint(1, 2 ** bits)
    den = rng.randint(1, 2 ** bits)
    return Fraction(num if rng.random() < 0.5 else -num, den)


def verify_certificate(cert: ResultantCertificate, sys: GenericSystem, trials: int = 5,
                       seed: int = 0, max_redraws: int = 20) -> dict:
    """Vanishing at random generic zeros plus per-block homogeneity.

    Each trial draws the main variables and the non-designated coefficients
    at random and sets every ``u_i0^(l)`` from ``P_i^(l) = 0``.
    """
    rng = random.Random(seed)
    sr = cert.resultant
    vars = sys.vars
    need = sorted(sr.keys())
    vanish = []
    for _ in range(trials):
        for _attempt in range(max_redraws):
            point = {}
            try:
                for v, l in need:
                    i, k = vars.slot(v)
                    if k == 0:
                        continue
                    point[(v, l)] = _random_rational(rng)
                zeros = {}
                for v, l in need:
                    i, k = vars.slot(v)
                    if k != 0:
                        continue
                    val = Fraction(0)
                    for kk in range(1, len(sys.supports[i])):
                        key = sys.coeff_key(i, kk, l)
                        if key not in point:
                            point[key] = _random_rational(rng)
                        q = mono_shift(sys.quotient(i, kk), l)
                        for mk, _ in q:
                            if mk not in point:
                                point[mk] = _random_rational(rng)
                        val -= point[key] * evaluate(DiffPoly.monomial(q), point)
                    zeros[(v, l)] = val
                point.update(zeros)
                vanish.append(evaluate(sr, point) == 0)
                break
            except ZeroDivisionError:
                continue
        else:
            raise InternalConsistencyError("could not draw a valid evaluation point")
    layer_info = {}
    homogeneous = True
    for i in range(len(sys)):
        lay = transformal_layers(sr, vars.block_vars(i))
        if lay is None:
            homogeneous = False
        layer_info[str(i)] = lay
    return {"trials": trials, "vanishing": all(vanish), "homogeneous": homogeneous,
            "layers": layer_info, "passed": all(vanish) and homogeneous}


def attach_verification(cert: ResultantCertificate, sys: GenericSystem, trials: int = 5,
                        seed: int = 0) -> ResultantCertificate:
    cert.verification = verify_certificate(cert, sys, trials, seed)
    return cert


# ---------------------------------------------------------------------------
# solutions of specialised systems

def _rational_root(x: Fraction, n: int) -> Fraction | None:
    if n == 1:
        return x
    if x < 0:
        if n % 2 == 0:
            return None
        r = _rational_root(-x, n)
        return None if r is None else -r

    def iroot(a):
        lo, hi = 0, 1
        while hi ** n <= a:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid ** n <= a:
                lo = mid
            else:
                hi = mid
        return lo if lo ** n == a else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    return None if a is None or b is None else Fraction(a, b)


def _power(x: Fraction, e: Fraction) -> Fraction | None:
    base = _rational_root(x, e.denominator)
    return None if base is None else base ** e.numerator


def specialise(p: DiffPoly, sys: GenericSystem, values) -> DiffPoly:
    """Replace every ``u_ik^(l)`` by the constant ``values[(i, k)]``."""
    point = {}
    for v, l in p.keys():
        if not sys.vars.is_main(v):
            point[(v, l)] = Fraction(values[sys.vars.slot(v)])
    out = {}
    for m, c in p.items():
        val = c
        rest = []
        for key, e in m:
            if key in point:
                val *= point[key] ** e
            else:
                rest.append((key, e))
        out[tuple(rest)] = out.get(tuple(rest), 0) + val
    return DiffPoly(out)


def reconstruct_solution(cert: ResultantCertificate, sys: GenericSystem, values):
    """Candidate common solution of the specialised system, or ``None``.

    ``values[(i, k)]`` are the rational coefficients.  Ratios of partial
    derivatives of the resultant give the values of ``M_ik/M_i0`` at the
    solution; each ``y_j`` is then a product of such ratios with exponents
    found by linear algebra on the support vectors.  Candidates are
    constant points (the transform fixes Q), so a candidate still has to
    be checked with :func:`solution_residuals`.
    """
    from .errors import DegenerateSpecialization

    sr = cert.resultant
    if specialise(sr, sys, values) != 0:
        raise ValueError("the resultant does not vanish at this specialisation")
    vars = sys.vars
    present = {}
    for v, l in sr.keys():
        i, k = vars.slot(v)
        present.setdefault((i, k), set()).add(l)
    used = [(i, k) for (i, k) in sorted(present) if k >= 1 and (i, 0) in present]
    mains = sorted({key for i, k in used for key, _ in sys.quotient(i, k)})
    col = {key: t for t, key in enumerate(mains)}
    # columns of A are the exponent vectors of M_ik / M_i0; solve A d = e_j
    A = [[Fraction(0)] * len(used) for _ in mains]
    for t, (i, k) in enumerate(used):
        for key, e in sys.quotient(i, k):
            A[col[key]][t] = Fraction(e)
    point = []
    for j in range(sys.n):
        target = [Fraction(1) if key == (j, 0) else Fraction(0) for key in mains]
        if (j, 0) not in col:
            return None
        sol = _solve_linear(A, target, len(used))
        if sol is None:
            return None
        xi = Fraction(1)
        for t, e in enumerate(sol):
            if not e:
                continue
            i, k = used[t]
            l = min(present[(i, 0)] & present[(i, k)] or present[(i, 0)])
            num = evaluate_partial(sr, sys, values, i, k, l)
            den = evaluate_partial(sr, sys, values, i, 0, l)
            if num == 0 or den == 0:
                raise DegenerateSpecialization(f"partial derivative for block {i} vanishes")
            val = _power(num / den, e)
            if val is None:
                return None
            xi *= val
        point.append(xi)
    return point


def evaluate_partial(sr: DiffPoly, sys: GenericSystem, values, i: int, k: int, l: int = 0) -> Fraction:
    dp = sr.derivative(sys.coeff_key(i, k, l))
    return specialise(dp, sys, values).coeff(ONE)


def _solve_linear(A, b, ncols):
    rows = [list(r) + [bb] for r, bb in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((t for t in range(r, len(rows)) if rows[t][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for t in range(len(rows)):
            if t != r and rows[t][c]:
                f = rows[t][c]
                rows[t] = [x - f * y for x, y in zip(rows[t], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    sol = [Fraction(0)] * ncols
    for t, c in enumerate(piv_cols):
        sol[c] = rows[t][-1]
    return sol


def solution_residuals(sys: GenericSystem, values, point) -> list:
    """Values of the specialised ``P_i`` at a constant point (all shifts equal)."""
    out = []
    for i in range(len(sys)):
        p = specialise(sys.poly(i), sys, values)
        assign = {key: point[key[0]] for key in p.keys()}
        out.append(evaluate(p, assign))
    return out
