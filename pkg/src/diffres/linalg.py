"""Exact sparse linear algebra over Q.

Rows are scaled to integers and eliminated fraction-free, with the
content of every updated row divided out.  Rows are processed fewest
nonzeros first (ties by index), which makes the echelon form and the
returned bases deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

PRIME = 2 ** 61 - 1


class SparseMatrixQ:
    """Coordinate-format matrix with exact rational entries.

    Parameters
    ----------
    rows, cols : int
        Shape.
    entries : dict
        ``{(row, col): value}``; zero values are dropped.
    """

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self._rows: dict = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry {(r, c)} outside a {rows}x{cols} matrix")
            v = Fraction(v)
            if v:
                self._rows.setdefault(r, {})[c] = v

    @classmethod
    def from_rows(cls, rows, cols: int | None = None, nrows: int | None = None) -> "SparseMatrixQ":
        """Build from a list of ``{col: value}`` dicts (or dense lists)."""
        dicts = [r if isinstance(r, dict) else {j: v for j, v in enumerate(r) if v} for r in rows]
        if cols is None:
            cols = max((max(d) + 1 for d in dicts if d), default=0)
            if rows and not isinstance(rows[0], dict):
                cols = max(cols, len(rows[0]))
        m = cls(len(dicts) if nrows is None else nrows, cols)
        for i, d in enumerate(dicts):
            row = {c: Fraction(v) for c, v in d.items() if v}
            if row:
                m._rows[i] = row
        return m

    @property
    def entries(self) -> dict:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def row_dicts(self) -> list:
        return [self._rows[r] for r in sorted(self._rows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def dense(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def apply(self, v) -> list:
        out = [Fraction(0)] * self.rows
        for r, row in self._rows.items():
            out[r] = sum((x * v[c] for c, x in row.items()), Fraction(0))
        return out


def _integer_row(row: dict) -> dict:
    den = reduce(lcm, (v.denominator for v in row.values()), 1)
    return _strip({c: int(v * den) for c, v in row.items()})


def _strip(row: dict) -> dict:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _reduce(r: dict, p: dict, c: int) -> dict:
    """``a*r - b*p`` eliminating column ``c``, content stripped."""
    a, b = p[c], r[c]
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0:
        a, b = -a, -b
    new = {k: a * v for k, v in r.items()} if a != 1 else dict(r)
    for k, v in p.items():
        s = new.get(k, 0) - b * v
        if s:
            new[k] = s
        else:
            new.pop(k, None)
    return _strip(new)


def _echelon(M: SparseMatrixQ) -> dict:
    """Pivot rows keyed by their leading (smallest) column."""
    rows = [(i, _integer_row(r)) for i, r in M._rows.items()]
    rows.sort(key=lambda t: (len(t[1]), t[0]))
    piv: dict = {}
    for _, r in rows:
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = r
                break
            r = _reduce(r, p, c)
    return piv


def rank_q(M: SparseMatrixQ) -> int:
    return len(_echelon(M))


def _rref(M: SparseMatrixQ) -> dict:
    piv = _echelon(M)
    cols = sorted(piv)
    for c in reversed(cols):
        p = piv[c]
        for c2 in cols:
            if c2 >= c:
                break
            r = piv[c2]
            if c in r:
                piv[c2] = _reduce(r, p, c)
    return piv


def nullspace_q(M: SparseMatrixQ) -> list:
    """Basis of ``{v : M v = 0}``, one vector per free column (ascending).

    The free column of each vector is set to 1 and the other free columns
    to 0.
    """
    piv = _rref(M)
    free = [c for c in range(M.cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for c, row in piv.items():
            if f in row:
                v[c] = Fraction(-row[f], row[c])
        basis.append(v)
    return basis


def solve_for_nonzero_projection(M: SparseMatrixQ, target) -> list | None:
    """A nullspace vector that is nonzero on the ``target`` columns, or ``None``."""
    target = sorted(set(target))
    if not target:
        raise ValueError("target must be nonempty")
    basis = nullspace_q(M)
    for v in basis:
        if any(v[c] for c in target):
            return v
    if basis:
        total = [sum(col, Fraction(0)) for col in zip(*basis)]
        if any(total[c] for c in target):
            return total
    return None


def rank_mod_p(M: SparseMatrixQ, p: int = PRIME) -> int:
    """Rank of ``M`` reduced modulo ``p``; never exceeds the rank over Q.

    Entries whose denominator vanishes mod ``p`` are not supported.
    """
    rows = []
    for i, r in M._rows.items():
        d = {}
        for c, v in r.items():
            x = v.numerator % p * pow(v.denominator % p, -1, p) % p
            if x:
                d[c] = x
        if d:
            rows.append((i, d))
    rows.sort(key=lambda t: (len(t[1]), t[0]))
    return _rank_mod_rows([d for _, d in rows], p)


def _rank_mod_rows(rows, p: int) -> int:
    piv: dict = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            q = piv.get(c)
            if q is None:
                inv = pow(r[c], -1, p)
                piv[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in q.items():
                s = (r.get(k, 0) - f * v) % p
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
    return len(piv)


def rank_integer_rows(rows, p: int | None = None) -> int:
    """Rank of a list of dense integer rows (exact unless ``p`` is given)."""
    dicts = [{j: v for j, v in enumerate(r) if v} for r in rows]
    if p is not None:
        return _rank_mod_rows([{j: v % p for j, v in d.items() if v % p} for d in dicts], p)
    width = max((len(r) for r in rows), default=0)
    return rank_q(SparseMatrixQ.from_rows(dicts, cols=width))
