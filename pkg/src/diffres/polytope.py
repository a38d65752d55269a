"""Exact volumes and mixed volumes of lattice polytopes in low dimension.

Qhull supplies the combinatorics of the hull (which points are vertices,
which simplices triangulate the boundary).  Every facet it reports is
re-checked with exact rational arithmetic before use, and volumes are
sums of exact determinants of cones from an interior point.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

import numpy as np
from scipy.spatial import ConvexHull


def _det(M) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def affine_basis(points) -> tuple:
    """``(origin, basis)``: an affine frame of the points' span, chosen greedily."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    origin = pts[0]
    basis, echelon = [], []
    for p in pts[1:]:
        v = [a - b for a, b in zip(p, origin)]
        w = list(v)
        for piv, row in echelon:
            if w[piv]:
                f = w[piv] / row[piv]
                w = [a - f * b for a, b in zip(w, row)]
        nz = next((j for j, x in enumerate(w) if x), None)
        if nz is not None:
            echelon.append((nz, w))
            basis.append(v)
    return origin, basis


def _coordinates(points, origin, basis):
    """Coordinates of points in an affine frame (exact)."""
    k = len(basis)
    dim = len(origin)
    rows = [list(col) for col in zip(*basis)]  # dim x k
    # k independent coordinate rows give a square system
    chosen = []
    for j in range(dim):
        trial = chosen + [j]
        if len(trial) <= k and _det_rank([rows[t] for t in trial]) == len(trial):
            chosen = trial
        if len(chosen) == k:
            break
    sub = [rows[t] for t in chosen]
    out = []
    for p in points:
        rhs = [Fraction(p[t]) - origin[t] for t in chosen]
        out.append(_solve(sub, rhs))
    return out


def _det_rank(rows) -> int:
    A = [list(r) for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c] / A[rank][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def _solve(A, b):
    n = len(A)
    M = [list(r) + [x] for r, x in zip(A, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c])
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * e for a, e in zip(M[r], M[c])]
    return [M[r][-1] for r in range(n)]


def _hull_vertices(points) -> list:
    """Extreme points of a finite set in its own affine span."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if len(pts) <= 1:
        return pts
    origin, basis = affine_basis(pts)
    k = len(basis)
    if k == 0:
        return [pts[0]]
    coords = _coordinates(pts, origin, basis)
    if k == 1:
        lo = min(range(len(pts)), key=lambda t: coords[t][0])
        hi = max(range(len(pts)), key=lambda t: coords[t][0])
        return sorted({pts[lo], pts[hi]})
    hull = ConvexHull(np.array([[float(x) for x in c] for c in coords]))
    cand = sorted({pts[t] for t in hull.vertices})
    return cand


class Polytope:
    """Convex hull of a finite point set in ``Q^dim``, stored by its vertices."""

    def __init__(self, points, dim: int | None = None):
        points = [tuple(p) for p in points]
        if not points:
            raise ValueError("a polytope needs at least one point")
        self.dim = len(points[0]) if dim is None else dim
        if any(len(p) != self.dim for p in points):
            raise ValueError("points of mixed dimension")
        self.vertices = _hull_vertices(points)

    def __add__(self, other: "Polytope") -> "Polytope":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in Minkowski sum")
        return Polytope([tuple(a + b for a, b in zip(p, q))
                         for p in self.vertices for q in other.vertices], self.dim)

    def volume(self) -> Fraction:
        return volume(self.vertices, self.dim)

    def __repr__(self):
        return f"Polytope({[tuple(str(x) for x in v) for v in self.vertices]})"


def volume(points, dim: int) -> Fraction:
    """Exact ``dim``-dimensional volume of the convex hull of ``points``."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    origin, basis = affine_basis(pts)
    if len(basis) < dim:
        return Fraction(0)
    if dim == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    hull = ConvexHull(np.array([[float(x) for x in p] for p in pts]))
    verts = [pts[t] for t in hull.vertices]
    center = tuple(sum(v[j] for v in verts) / len(verts) for j in range(dim))
    total = Fraction(0)
    for simplex in hull.simplices:
        face = [pts[t] for t in simplex]
        _check_facet(face, center, verts)
        total += abs(_det([[a - c for a, c in zip(v, center)] for v in face]))
    return total / factorial(dim)


def _check_facet(face, center, verts):
    """Raise unless every vertex lies weakly on the inner side of ``face``'s hyperplane."""
    dim = len(center)
    base = face[0]
    dirs = [[a - b for a, b in zip(v, base)] for v in face[1:]]
    normal = []
    for j in range(dim):
        minor = [[d[t] for t in range(dim) if t != j] for d in dirs]
        normal.append((-1) ** j * _det(minor))
    if not any(normal):
        return  # flat sliver from triangulating a coplanar facet; contributes zero
    side_c = sum(nv * (c - b) for nv, c, b in zip(normal, center, base))
    for v in verts:
        side = sum(nv * (x - b) for nv, x, b in zip(normal, v, base))
        if side * side_c < 0:
            raise ArithmeticError("inexact hull facet reported by qhull")


def mixed_volume(polytopes) -> int | Fraction:
    """Mixed volume normalised so that ``MV(Q, ..., Q) = dim! * vol(Q)``.

    Inclusion-exclusion over all nonempty subsets of Minkowski sums.
    """
    polys = list(polytopes)
    N = len(polys)
    if N == 0:
        raise ValueError("no polytopes")
    if any(q.dim != N for q in polys):
        raise ValueError(f"mixed volume needs {N} polytopes in dimension {N}")
    total = Fraction(0)
    for size in range(1, N + 1):
        sign = (-1) ** (N - size)
        for J in itertools.combinations(range(N), size):
            acc = polys[J[0]]
            for j in J[1:]:
                acc = acc + polys[j]
            total += sign * acc.volume()
    return int(total) if total.denominator == 1 else total
