"""Laurent difference polynomials over Q.

A shifted variable is a pair ``(var, shift)`` where ``var`` indexes a
:class:`VarTable` and ``shift`` counts applications of the transform
operator.  A monomial is a tuple of ``((var, shift), exponent)`` pairs
sorted by key, with no zero exponents.  The ground field Q is fixed by
the transform, so rational coefficients never change under shifting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping

NEG_INF = float("-inf")

Key = tuple  # (var index, shift)
Monomial = tuple  # ((Key, exp), ...)

ONE: Monomial = ()


# ---------------------------------------------------------------------------
# monomials

def mono(items: Mapping | Iterable) -> Monomial:
    """Canonical monomial from a mapping or iterable of (key, exponent)."""
    acc: dict = {}
    pairs = items.items() if isinstance(items, Mapping) else items
    for key, e in pairs:
        acc[key] = acc.get(key, 0) + e
    return tuple(sorted((k, e) for k, e in acc.items() if e != 0))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for k, e in b:
        s = acc.get(k, 0) + e
        if s:
            acc[k] = s
        else:
            del acc[k]
    return tuple(sorted(acc.items()))


def mono_pow(a: Monomial, e: int) -> Monomial:
    if e == 0:
        return ONE
    return tuple((k, x * e) for k, x in a)


def mono_inv(a: Monomial) -> Monomial:
    return tuple((k, -x) for k, x in a)


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return mono_mul(a, mono_inv(b))


def mono_shift(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return a
    return tuple(((v, s + k), e) for (v, s), e in a)


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_sort_key(a: Monomial):
    """Graded order, ties broken lexicographically on canonical keys.

    Smaller keys are more significant and a larger exponent on the first
    differing key makes the monomial larger.
    """
    return (mono_degree(a), tuple((-v, -s, e) for (v, s), e in a))


# ---------------------------------------------------------------------------
# variable table

@dataclass(frozen=True)
class VarTable:
    """Main variables first (indices ``0..n-1``), then coefficient blocks.

    ``blocks[i]`` is the number of coefficient slots ``l_i + 1`` of
    polynomial ``i``.
    """

    main: tuple
    blocks: tuple = ()
    coeff_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.main) < 1:
            raise ValueError("at least one main variable is required")
        if not self.coeff_names:
            wide = len(self.blocks) > 10 or any(b > 10 for b in self.blocks)
            names = []
            for i, b in enumerate(self.blocks):
                for k in range(b):
                    names.append(f"u{i}_{k}" if wide else f"u{i}{k}")
            object.__setattr__(self, "coeff_names", tuple(names))
        names = list(self.main) + list(self.coeff_names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        offsets, acc = [], len(self.main)
        for b in self.blocks:
            offsets.append(acc)
            acc += b
        object.__setattr__(self, "_offsets", tuple(offsets))
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})

    @property
    def n(self) -> int:
        return len(self.main)

    @property
    def size(self) -> int:
        return self.n + sum(self.blocks)

    def name(self, idx: int) -> str:
        return self.main[idx] if idx < self.n else self.coeff_names[idx - self.n]

    def index(self, name: str) -> int:
        return self._index[name]

    def kind(self, idx: int) -> str:
        return "main" if idx < self.n else "coeff"

    def is_main(self, idx: int) -> bool:
        return idx < self.n

    def coeff(self, i: int, k: int) -> int:
        if not 0 <= k < self.blocks[i]:
            raise IndexError(f"slot {k} out of range for block {i}")
        return self._offsets[i] + k

    def slot(self, idx: int) -> tuple:
        """``(i, k)`` for a coefficient variable index."""
        if idx < self.n:
            raise ValueError("not a coefficient variable")
        for i in range(len(self.blocks) - 1, -1, -1):
            if idx >= self._offsets[i]:
                return i, idx - self._offsets[i]
        raise ValueError("bad index")

    def block_vars(self, i: int) -> list:
        return [self._offsets[i] + k for k in range(self.blocks[i])]

    def with_blocks(self, blocks) -> "VarTable":
        return VarTable(tuple(self.main), tuple(blocks))


# ---------------------------------------------------------------------------
# polynomials

def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class DiffPoly:
    """Immutable sparse polynomial ``{monomial: Fraction}``.

    Arithmetic returns new objects; zero coefficients are never stored.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        d: dict = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in pairs:
            c = _frac(c)
            if c:
                s = d.get(m, 0) + c
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        self._t = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "DiffPoly":
        p = cls.__new__(cls)
        p._t = d
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "DiffPoly":
        return cls({ONE: c})

    @classmethod
    def var(cls, idx: int, shift: int = 0, exp: int = 1) -> "DiffPoly":
        return cls._raw({(((idx, shift), exp),): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "DiffPoly":
        return cls({m: c})

    # -- inspection
    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __iter__(self):
        return iter(self._t.items())

    def items(self):
        return self._t.items()

    def coeff(self, m: Monomial) -> Fraction:
        return self._t.get(m, Fraction(0))

    @property
    def terms(self) -> list:
        """``(coefficient, monomial)`` pairs, leading term first."""
        return [(self._t[m], m) for m in sorted(self._t, key=mono_sort_key, reverse=True)]

    def monomials(self):
        return list(self._t)

    def leading(self):
        m = max(self._t, key=mono_sort_key)
        return self._t[m], m

    def keys(self) -> set:
        return {k for m in self._t for k, _ in m}

    def degree(self) -> int:
        if not self._t:
            return NEG_INF
        return max(mono_degree(m) for m in self._t)

    def degree_in(self, keys) -> int:
        keys = set(keys)
        if not self._t:
            return NEG_INF
        return max(sum(e for k, e in m if k in keys) for m in self._t)

    def is_zero(self):
        return not self._t

    def is_constant(self):
        return all(m == ONE for m in self._t)

    # -- arithmetic
    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    @staticmethod
    def _coerce(x) -> "DiffPoly":
        if isinstance(x, DiffPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return DiffPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._t)
        for m, c in other._t.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return DiffPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return DiffPoly()
            return DiffPoly._raw({m: c * other for m, c in self._t.items()})
        other = self._coerce(other)
        d: dict = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = mono_mul(m1, m2)
                s = d.get(m, 0) + c1 * c2
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return DiffPoly._raw(d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._t) != 1:
                raise ValueError("negative powers only for monomials")
            (m, c), = self._t.items()
            return DiffPoly._raw({mono_pow(m, e): Fraction(1) / c ** -e})
        result = DiffPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "DiffPoly":
        c = _frac(c)
        return DiffPoly._raw({mono_mul(t, m): v * c for t, v in self._t.items()})

    def map_monomials(self, f) -> "DiffPoly":
        return DiffPoly((f(m), c) for m, c in self._t.items())

    def derivative(self, key: Key) -> "DiffPoly":
        d = {}
        for m, c in self._t.items():
            for k, e in m:
                if k == key:
                    nm = mono_mul(m, ((k, -1),))
                    d[nm] = d.get(nm, 0) + c * e
        return DiffPoly(d)

    def __repr__(self):
        return f"DiffPoly({to_string(self)})"


# ---------------------------------------------------------------------------
# operations

def transform(p: DiffPoly, k: int) -> DiffPoly:
    """Apply the shift operator ``k`` times."""
    if k < 0:
        raise ValueError("transform order must be nonnegative")
    if k == 0:
        return p
    return DiffPoly._raw({mono_shift(m, k): c for m, c in p.items()})


def _main_pred(vars: VarTable | None):
    if vars is None:
        return lambda idx: True
    return vars.is_main


def norm_form(F: DiffPoly, vars: VarTable | None = None):
    """Return ``(M, N)`` with ``N = M*F`` and main-variable content removed.

    With ``vars=None`` every variable is treated as a main variable.
    """
    if F.is_zero():
        raise ValueError("norm form of zero undefined")
    is_main = _main_pred(vars)
    keys = {k for k in F.keys() if is_main(k[0])}
    mins = {}
    for m, _ in F:
        dm = dict(m)
        for k in keys:
            e = dm.get(k, 0)
            if k not in mins or e < mins[k]:
                mins[k] = e
    M = mono((k, -e) for k, e in mins.items())
    return M, F.mul_monomial(M)


def order_stats(p: DiffPoly, v: int):
    """``(ord, lord, Eord)`` of ``p`` in variable ``v``; ``NEG_INF`` when absent."""
    shifts = [s for (var, s) in p.keys() if var == v]
    if not shifts:
        return NEG_INF, NEG_INF, NEG_INF
    hi, lo = max(shifts), min(shifts)
    return hi, lo, hi - lo


def evaluate(p: DiffPoly, assignment: Mapping) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        val = c
        for key, e in m:
            if key not in assignment:
                raise KeyError(f"no value assigned to {key}")
            x = _frac(assignment[key])
            if e < 0 and x == 0:
                raise ZeroDivisionError(f"zero value for {key} under a negative exponent")
            val *= x ** e
        total += val
    return total


def substitute(p: DiffPoly, images: Mapping) -> DiffPoly:
    """Replace shifted variables by polynomials; unlisted variables stay."""
    out = DiffPoly()
    cache: dict = {}
    for m, c in p.items():
        term = DiffPoly.const(c)
        rest = []
        for key, e in m:
            if key in images:
                if (key, e) not in cache:
                    cache[(key, e)] = images[key] ** e
                term = term * cache[(key, e)]
            else:
                rest.append((key, e))
        out = out + term.mul_monomial(tuple(rest))
    return out


def transformal_layers(p: DiffPoly, group) -> list | None:
    """Per-shift-layer degrees if ``p`` is homogeneous in every layer of ``group``.

    Returns ``None`` when some layer is not homogeneous, ``[]`` when the
    group does not occur.
    """
    group = set(group)
    top = -1
    for var, s in p.keys():
        if var in group:
            top = max(top, s)
    layers = None
    for m, _ in p:
        deg = [0] * (top + 1)
        for (var, s), e in m:
            if var in group:
                deg[s] += e
        if layers is None:
            layers = deg
        elif deg != layers:
            return None
    return layers if layers is not None else []


def is_transformally_homogeneous(p: DiffPoly, group) -> bool:
    return transformal_layers(p, group) is not None


def primitive_part(p: DiffPoly):
    """Integer coprime coefficients with positive leading coefficient.

    Returns ``(q, scale)`` where ``q = scale * p``.
    """
    if p.is_zero():
        raise ValueError("cannot normalise the zero polynomial")
    coeffs = [c for _, c in p.items()]
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    num = reduce(gcd, (abs(c.numerator) * (den // c.denominator) for c in coeffs), 0)
    scale = Fraction(den, num)
    if p.leading()[0] < 0:
        scale = -scale
    return p * scale, scale


# ---------------------------------------------------------------------------
# generic systems

@dataclass(frozen=True)
class GenericSystem:
    """``P_i = sum_k u_ik * M_ik`` with one fresh coefficient per support monomial.

    ``supports[i][0]`` is the designated denominator ``M_i0``.
    """

    vars: VarTable
    supports: tuple

    def __post_init__(self):
        sup = tuple(tuple(s) for s in self.supports)
        object.__setattr__(self, "supports", sup)
        if len(sup) != self.vars.n + 1:
            raise ValueError(f"need n+1 = {self.vars.n + 1} polynomials, got {len(sup)}")
        if tuple(len(s) for s in sup) != tuple(self.vars.blocks):
            raise ValueError("block sizes do not match the supports")
        for i, s in enumerate(sup):
            if len(s) < 2:
                raise ValueError(f"polynomial {i} needs at least two terms")
            if len(set(s)) != len(s):
                raise ValueError(f"duplicate monomial in the support of polynomial {i}")
            for m in s:
                for (v, sh), _ in m:
                    if not self.vars.is_main(v) or sh < 0:
                        raise ValueError("support monomials must use main variables only")
        object.__setattr__(self, "_cache", {})

    @classmethod
    def from_supports(cls, main_names, supports) -> "GenericSystem":
        vt = VarTable(tuple(main_names), tuple(len(s) for s in supports))
        return cls(vt, tuple(tuple(mono(m) for m in s) for s in supports))

    @property
    def n(self) -> int:
        return self.vars.n

    def __len__(self):
        return len(self.supports)

    def poly(self, i: int) -> DiffPoly:
        c = self._cache
        if ("poly", i) not in c:
            d = {}
            for k, m in enumerate(self.supports[i]):
                d[mono_mul(m, (((self.vars.coeff(i, k), 0), 1),))] = 1
            c[("poly", i)] = DiffPoly(d)
        return c[("poly", i)]

    @property
    def polys(self) -> list:
        return [self.poly(i) for i in range(len(self))]

    def norm(self, i: int) -> DiffPoly:
        c = self._cache
        if ("norm", i) not in c:
            c[("norm", i)] = norm_form(self.poly(i), self.vars)[1]
        return c[("norm", i)]

    def normaliser(self, i: int) -> Monomial:
        return norm_form(self.poly(i), self.vars)[0]

    def quotient(self, i: int, k: int) -> Monomial:
        """``M_ik / M_i0``."""
        return mono_div(self.supports[i][k], self.supports[i][0])

    def coeff_key(self, i: int, k: int, shift: int = 0) -> Key:
        return (self.vars.coeff(i, k), shift)


# ---------------------------------------------------------------------------
# printing (parsing lives in diffres.textio)

def _factor_str(name: str, shift: int, exp: int) -> str:
    s = name + (f"@{shift}" if shift else "")
    return s + (f"^{exp}" if exp != 1 else "")


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_string(p: DiffPoly, vars: VarTable | None = None) -> str:
    """Canonical text form with explicit ``*`` and ``@k`` transform notation."""
    if p.is_zero():
        return "0"

    def nm(idx):
        return vars.name(idx) if vars is not None else f"v{idx}"

    parts = []
    for i, (c, m) in enumerate(p.terms):
        neg = c < 0
        a = -c if neg else c
        factors = [_factor_str(nm(v), s, e) for (v, s), e in m]
        if not factors:
            body = _coef_str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _coef_str(a) + "*" + "*".join(factors)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
