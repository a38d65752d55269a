"""Reduction of a difference resultant to an algebraic sparse resultant.

Pipeline: prolong the super-essential polynomials by their Jacobi
numbers, treat every shifted main variable as an independent algebraic
variable, pick the essential subset of minimal ranking, set surplus
variables to 1, change monomial coordinates so the supports span the
full lattice, and solve for the algebraic sparse resultant whose
per-block degrees are mixed volumes.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod

from .diffpoly import NEG_INF, DiffPoly, GenericSystem, mono, mono_shift
from .engine import (Ansatz, AssembledSystem, ResultantCertificate, _candidate_polys,
                     _compositions, _consistent, _homogeneous, make_certificate,
                     vanishing_system)
from .errors import (BoundsExceededError, DiffresError, InternalConsistencyError,
                     NotEssentialError, SizeGuardExceeded)
from .jacobi import search_bounds
from .linalg import rank_integer_rows
from .polytope import Polytope, mixed_volume
from .smith import hermite_normal_form, inverse_q, smith_normal_form
from .support import rank_fraction_free, specialised_rows

EXHAUSTIVE_LIMIT = 16


# ---------------------------------------------------------------------------
# algebraic systems

@dataclass(frozen=True)
class AlgPoly:
    """``sum_k c_k x^alpha_k`` with ``alpha_0 = 0``.

    ``label`` is ``(i, r)`` for ``transform(P_i, r)``; ``slots`` pairs a
    coefficient key with its exponent vector.
    """

    label: tuple
    slots: tuple

    def exponents(self) -> list:
        return [a for _, a in self.slots]

    def coefficient_keys(self) -> list:
        return [c for c, _ in self.slots]


@dataclass(frozen=True)
class AlgPolySystem:
    """Generic sparse Laurent polynomials in plain algebraic variables."""

    variables: tuple
    polys: tuple
    history: tuple = ()

    def __post_init__(self):
        N = len(self.variables)
        for p in self.polys:
            if len(p.slots) < 2:
                raise ValueError(f"polynomial {p.label} needs at least two terms")
            if any(len(a) != N for _, a in p.slots):
                raise ValueError("exponent vector length differs from variable count")
            if any(p.slots[0][1]):
                raise ValueError(f"polynomial {p.label}: slot 0 must have exponent 0")

    def __len__(self):
        return len(self.polys)

    @property
    def labels(self) -> list:
        return [p.label for p in self.polys]

    def support_vectors(self) -> list:
        """Per polynomial, the nonzero-slot exponent vectors (``omega_i`` without ``c``)."""
        return [[list(a) for _, a in p.slots[1:]] for p in self.polys]

    def specialised_matrix(self, rng: random.Random) -> list:
        """``omega_i`` with every ``c`` replaced by a random integer."""
        return specialised_rows(self.support_vectors(), rng)

    def symbolic_matrix(self) -> list:
        """``omega_i`` with the ``c`` kept as indeterminates (entries are linear forms)."""
        rows = []
        for p in self.polys:
            row = [DiffPoly() for _ in self.variables]
            for key, a in p.slots[1:]:
                c = DiffPoly.var(key[0], key[1])
                for j, e in enumerate(a):
                    if e:
                        row[j] = row[j] + c * e
            rows.append(row)
        return rows

    def restrict(self, subset) -> "AlgPolySystem":
        """Keep the polynomials at positions ``subset`` and the variables they use."""
        polys = [self.polys[t] for t in subset]
        used = [j for j in range(len(self.variables))
                if any(a[j] for p in polys for _, a in p.slots)]
        return self._project(polys, used, ("restrict", tuple(subset)))

    def _project(self, polys, cols, note) -> "AlgPolySystem":
        new = tuple(AlgPoly(p.label, tuple((c, tuple(a[j] for j in cols)) for c, a in p.slots))
                    for p in polys)
        return AlgPolySystem(tuple(self.variables[j] for j in cols), new, self.history + (note,))


def from_prolongation(sys: GenericSystem, K) -> AlgPolySystem:
    """``transform(P_i / M_i0, r)`` for ``r <= K_i``; shifted main variables become plain variables."""
    raw = []
    for i, Ki in enumerate(K):
        if Ki == NEG_INF or Ki < 0:
            continue
        for r in range(int(Ki) + 1):
            slots = [(sys.coeff_key(i, k, r), mono_shift(sys.quotient(i, k), r))
                     for k in range(len(sys.supports[i]))]
            raw.append(((i, r), slots))
    variables = sorted({key for _, slots in raw for _, m in slots for key, _ in m})
    col = {v: j for j, v in enumerate(variables)}
    polys = []
    for label, slots in raw:
        out = []
        for c, m in slots:
            a = [0] * len(variables)
            for key, e in m:
                a[col[key]] += e
            out.append((c, tuple(a)))
        polys.append(AlgPoly(label, tuple(out)))
    polys.sort(key=lambda p: p.label)
    return AlgPolySystem(tuple(variables), tuple(polys), (("prolong", tuple(K)),))


# ---------------------------------------------------------------------------
# rank oracles

class _Ranker:
    """Ranks of row subsets of one support matrix, either on a fixed random draw or exactly."""

    def __init__(self, sys: AlgPolySystem, mode: str = "probabilistic", seed: int = 0):
        self.mode = mode
        if mode == "exact":
            self.rows = sys.symbolic_matrix()
        elif mode == "probabilistic":
            self.rows = sys.specialised_matrix(random.Random(seed))
        else:
            raise ValueError(f"unknown rank mode {mode!r}")
        self._memo = {}

    def rank(self, subset, cols=None) -> int:
        key = (tuple(subset), None if cols is None else tuple(cols))
        if key not in self._memo:
            rows = [self.rows[t] for t in subset]
            if cols is not None:
                rows = [[r[j] for j in cols] for r in rows]
            if not rows or not rows[0]:
                r = 0
            elif self.mode == "exact":
                r = rank_fraction_free(rows)
            else:
                r = rank_integer_rows(rows)
            self._memo[key] = r
        return self._memo[key]


def is_essential_subset(ranker: _Ranker, subset) -> bool:
    """``rank = |I| - 1`` and every proper subset has full rank."""
    size = len(subset)
    if ranker.rank(subset) != size - 1:
        return False
    # circuits: enough to test the maximal proper subsets
    return all(ranker.rank(J) == size - 1 for J in itertools.combinations(subset, size - 1))


def ranking_key(subset) -> tuple:
    """Sort key realising the subset ranking: descending elements, prefixes rank lower."""
    return tuple(sorted(subset, reverse=True))


def essential_subset_minimal_ranking(sys: AlgPolySystem, method: str = "auto",
                                     mode: str = "probabilistic", seed: int = 0) -> tuple:
    """Positions (ascending) of the essential subset of minimal ranking.

    ``exhaustive`` scans every subset.  ``circuit`` finds the first
    dependent prefix and returns its fundamental circuit; since the
    essential subsets are exactly the circuits of the row matroid, that
    circuit is the minimal one.  ``auto`` scans exhaustively up to
    ``EXHAUSTIVE_LIMIT`` polynomials.
    """
    ranker = _Ranker(sys, mode, seed)
    n = len(sys)
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "circuit"
    if method == "circuit":
        for t in range(1, n + 1):
            prefix = list(range(t))
            if ranker.rank(prefix) < t:
                top = t - 1
                circuit = [j for j in range(top)
                           if ranker.rank([x for x in prefix if x != j]) == t - 1]
                return tuple(circuit + [top])
        raise NotEssentialError("no essential subset: the support matrix has full row rank")
    if method == "exhaustive":
        best = None
        for size in range(1, n + 1):
            for S in itertools.combinations(range(n), size):
                if best is not None and ranking_key(S) >= ranking_key(best):
                    continue
                if is_essential_subset(ranker, S):
                    best = S
        if best is None:
            raise NotEssentialError("no essential subset: the support matrix has full row rank")
        return best
    raise ValueError(f"unknown method {method!r}")


def specialize_to_essential_vars(sys: AlgPolySystem, mode: str = "probabilistic",
                                 seed: int = 0) -> tuple:
    """Keep ``|I| - 1`` variables whose columns reach rank ``|I| - 1``; set the rest to 1.

    Columns are chosen greedily in variable order, which yields the
    lexicographically first full-rank column subset.  Returns
    ``(system, kept, dropped)`` with variables named as in ``sys``.
    """
    ranker = _Ranker(sys, mode, seed)
    rows = list(range(len(sys)))
    target = len(sys) - 1
    if ranker.rank(rows) != target:
        raise NotEssentialError("specialisation needs an essential system")
    cols = []
    for j in range(len(sys.variables)):
        if len(cols) == target:
            break
        if ranker.rank(rows, cols + [j]) == len(cols) + 1:
            cols.append(j)
    if len(cols) != target:
        raise InternalConsistencyError("no full-rank column subset")
    dropped = [v for j, v in enumerate(sys.variables) if j not in cols]
    out = sys._project(list(sys.polys), cols, ("specialize", tuple(dropped)))
    return out, [sys.variables[j] for j in cols], dropped


# ---------------------------------------------------------------------------
# lattice change of variables

@dataclass
class SmithRecord:
    """``z_j = x^(B_j)`` and ``x_i = z^(Binv_i)``; ``invariant_factors`` from the Smith form."""

    old_variables: tuple
    basis: list
    inverse: list
    invariant_factors: list

    def is_identity(self) -> bool:
        n = len(self.basis)
        return self.basis == [[int(i == j) for j in range(n)] for i in range(n)]

    def describe(self) -> list:
        """``z_j`` as ``[(old variable, exponent), ...]``."""
        return [[(v, e) for v, e in zip(self.old_variables, row) if e] for row in self.basis]


def smith_transform(sys: AlgPolySystem) -> tuple:
    """Monomial change of variables making the supports span ``Z^N``.

    The Smith form of the stacked exponent vectors certifies full rank
    and gives the lattice index; the lattice basis used for the new
    coordinates is its Hermite normal form, so the identity is returned
    whenever the supports already span ``Z^N``.
    """
    N = len(sys.variables)
    E = [list(a) for p in sys.polys for _, a in p.slots if any(a)]
    if not E:
        raise DiffresError("degenerate lattice: no nonzero exponents")
    _, D, _ = smith_normal_form(E)
    factors = [D[i][i] for i in range(min(len(D), N)) if D[i][i]]
    if len(factors) < N:
        raise DiffresError(f"degenerate lattice: rank {len(factors)} < {N}")
    B = hermite_normal_form(E)
    Binv = inverse_q(B)
    polys = []
    for p in sys.polys:
        slots = []
        for c, a in p.slots:
            beta = [sum(Fraction(a[i]) * Binv[i][j] for i in range(N)) for j in range(N)]
            if any(b.denominator != 1 for b in beta):
                raise InternalConsistencyError("exponent outside the support lattice")
            slots.append((c, tuple(int(b) for b in beta)))
        polys.append(AlgPoly(p.label, tuple(slots)))
    record = SmithRecord(sys.variables, B, Binv, factors)
    names = tuple(("z", j + 1) for j in range(N))
    new = AlgPolySystem(names, tuple(polys), sys.history + (("smith", tuple(map(tuple, B))),))
    return new, record


# ---------------------------------------------------------------------------
# algebraic sparse resultant

def newton_polytopes(sys: AlgPolySystem) -> list:
    return [Polytope(p.exponents(), len(sys.variables)) for p in sys.polys]


def mixed_volume_degrees(sys: AlgPolySystem) -> list:
    """``deg(R, c_i) = MV(Q_j : j != i)`` for a strong essential system."""
    Q = newton_polytopes(sys)
    return [int(mixed_volume([q for j, q in enumerate(Q) if j != i])) for i in range(len(Q))]


def _images(sys: AlgPolySystem) -> dict:
    """``c_i0 -> -sum_k c_ik z^beta_ik``; ``z_t`` uses the reserved key ``(-1 - t, 0)``."""
    images = {}
    for p in sys.polys:
        img = DiffPoly()
        for c, a in p.slots[1:]:
            m = mono([((-1 - t, 0), e) for t, e in enumerate(a) if e] + [(c, 1)])
            img = img - DiffPoly.monomial(m)
        images[p.slots[0][0]] = img
    return images


def _block_monomials(sys: AlgPolySystem, degrees) -> list:
    per = [list(_homogeneous(sorted(p.coefficient_keys()), e)) for p, e in zip(sys.polys, degrees)]
    return [tuple(sorted(sum(parts, ()))) for parts in itertools.product(*per)]


def _solve_block(sys, degrees, images, prefilter=True) -> list:
    monos = _block_monomials(sys, degrees)
    asm = AssembledSystem(vanishing_system(monos, images), Ansatz(monos, []), len(monos))
    return _candidate_polys(asm, prefilter)


def bezout_cap(sys: AlgPolySystem) -> int:
    """``prod (deg F_i + 1)`` with degrees measured on nonnegative exponent parts."""
    degs = [max(sum(max(e, 0) for e in a) for a in p.exponents()) for p in sys.polys]
    return prod(d + 1 for d in degs)


def algebraic_sparse_resultant(sys: AlgPolySystem, degrees=None, cap: int | None = None,
                               prefilter: bool = True) -> tuple:
    """Generator of ``(F) cap Q[c]`` for a strong essential system.

    Returns ``(polynomial, degrees)``.  With ``degrees`` known (by default
    the mixed volumes when ``N <= 4``) one multihomogeneous block is
    solved; otherwise block degree vectors are scanned by total degree.
    """
    N = len(sys.variables)
    if len(sys) != N + 1:
        raise NotEssentialError(f"need {N + 1} polynomials in {N} variables, got {len(sys)}")
    images = _images(sys)
    if degrees is None and N <= 4:
        degrees = mixed_volume_degrees(sys)
    if degrees is not None:
        found = _solve_block(sys, degrees, images, prefilter)
        if found:
            return _consistent(found), list(degrees)
    cap = bezout_cap(sys) if cap is None else cap
    for d in range(len(sys), cap + 1):
        for vec in _compositions(d, [1] * len(sys)):
            found = _solve_block(sys, vec, images, prefilter)
            if found:
                return _consistent(found), list(vec)
    raise BoundsExceededError(f"bounds exceeded: no algebraic resultant up to degree {cap}")


# ---------------------------------------------------------------------------
# full pipeline

def resultant_via_reduction(sys: GenericSystem, *, seed: int = 0, mode: str = "probabilistic",
                            subset_method: str = "auto") -> ResultantCertificate:
    """Difference resultant through the algebraic reduction; ``meta['stages']`` records each step."""
    rng = random.Random(seed)
    report = search_bounds(sys, mode, rng=rng)
    K = report.J_T
    alg = from_prolongation(sys, K)
    subset = essential_subset_minimal_ranking(alg, subset_method, seed=seed)
    ess = alg.restrict(subset)
    special, kept, dropped = specialize_to_essential_vars(ess, seed=seed)
    strong, record = smith_transform(special)
    R, degrees = algebraic_sparse_resultant(strong)
    blocks_in_subset = sorted({alg.polys[t].label[0] for t in subset})
    cert = make_certificate(R, sys)
    blocks_in_sr = [i for i, o in enumerate(cert.orders) if o != NEG_INF]
    cert.meta = {
        "engine": "reduction",
        "stages": {
            "T": tuple(report.T),
            "K": [None if k == NEG_INF else k for k in K],
            "prolongation": [p.label for p in alg.polys],
            "essential_subset": [alg.polys[t].label for t in subset],
            "kept": kept,
            "dropped": dropped,
            "smith": record.describe(),
            "smith_record": record,
            "system": strong,
            "degrees": degrees,
        },
        "subset_blocks_match": blocks_in_subset == blocks_in_sr,
        "bounds": report.as_dict(),
    }
    return cert


# ---------------------------------------------------------------------------
# dense difference resultant

def dense_system(n: int, s, m) -> GenericSystem:
    """``P_i = u_i0 + sum u_ia (Y^[s_i])^a`` over all monomials of degree ``1..m_i``."""
    if n < 1 or len(s) != n + 1 or len(m) != n + 1:
        raise ValueError("need n >= 1 and n+1 orders and degrees")
    names = [f"y{j + 1}" for j in range(n)]
    supports = []
    for si, mi in zip(s, m):
        if si < 0 or mi < 1:
            raise ValueError("orders must be >= 0 and degrees >= 1")
        keys = [(j, k) for j in range(n) for k in range(si + 1)]
        monos = [()]
        for d in range(1, mi + 1):
            for combo in itertools.combinations_with_replacement(keys, d):
                monos.append(mono((key, 1) for key in combo))
        supports.append(monos)
    return GenericSystem.from_supports(names, supports)


def _dense_alg(n, s, m):
    sys = dense_system(n, s, m)
    total = sum(s)
    K = [total - si for si in s]
    return sys, K, from_prolongation(sys, K)


def dense_degree_report(n: int, s, m) -> dict:
    """Orders ``s - s_i``, the cap ``prod (m_i+1)^(s-s_i+1)`` and mixed-volume degrees."""
    sys, K, alg = _dense_alg(n, s, m)
    N = len(alg.variables)
    report = {
        "n": n, "s": list(s), "m": list(m), "s_total": sum(s),
        "orders": K,
        "cap": prod((mi + 1) ** (k + 1) for mi, k in zip(m, K)),
        "variables": N,
        "polynomials": len(alg),
        "layer_degrees": None, "block_degrees": None, "degree": None,
    }
    if len(alg) != N + 1:
        raise InternalConsistencyError("dense prolongation is not square")
    if N <= 4:
        degs = mixed_volume_degrees(alg)
        report["layer_degrees"] = {f"{i},{r}": d for (i, r), d in zip(alg.labels, degs)}
        block = [0] * (n + 1)
        for (i, _), d in zip(alg.labels, degs):
            block[i] += d
        report["block_degrees"] = block
        report["degree"] = sum(block)
    return report


def ansatz_size(alg: AlgPolySystem, degrees) -> int:
    return prod(comb(d + len(p.slots) - 1, d) for p, d in zip(alg.polys, degrees))


def dense_resultant(n: int, s, m, size_guard: int = 20000) -> tuple:
    """``(certificate, report)`` for the generic dense system; raises ``SizeGuardExceeded``."""
    sys, K, alg = _dense_alg(n, s, m)
    report = dense_degree_report(n, s, m)
    if report["layer_degrees"] is None:
        raise SizeGuardExceeded("size guard exceeded: mixed volumes unavailable", report)
    degs = list(report["layer_degrees"].values())
    size = ansatz_size(alg, degs)
    report["unknowns"] = size
    if size > size_guard:
        raise SizeGuardExceeded(f"size guard exceeded: {size} unknowns > {size_guard}", report)
    R, _ = algebraic_sparse_resultant(alg, degs)
    cert = make_certificate(R, sys, {"engine": "dense", "report": report})
    return cert, report
