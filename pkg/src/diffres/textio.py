"""Text grammar, system documents and certificate serialisation.

Grammar::

    system  ::= poly (';' poly)*
    poly    ::= sign? term (sign term)*
    term    ::= rational? ('*'? factor)+ | rational
    factor  ::= ident ('@' nat)? ('^' int)?

``name@k`` is the k-th transform of ``name``.  Coefficient variables are
``u{i}{k}`` (single digit ``i``) or ``u{i}_{k}``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .diffpoly import NEG_INF, DiffPoly, GenericSystem, VarTable, mono, to_string
from .errors import ParseError

_COEFF = re.compile(r"^u(\d)(\d+)$|^u(\d+)_(\d+)$")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/@^;]))")


def coeff_slot(name: str):
    """``(i, k)`` if ``name`` is a coefficient variable name, else ``None``."""
    m = _COEFF.match(name)
    if not m:
        return None
    a, b, c, d = m.groups()
    return (int(a), int(b)) if a is not None else (int(c), int(d))


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


@dataclass
class _Factor:
    name: str
    shift: int
    exp: int
    line: int
    col: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                line, col = self._lc(pos)
                raise ParseError(f"unexpected character {text[pos]!r}", line, col)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def _lc(self, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        line, col = self._lc(pos)
        return ParseError(msg, line, col)

    def expect(self, kind, value=None):
        k, v, p = self.peek()
        if k != kind or (value is not None and v != value):
            want = value or kind
            got = v if v is not None else "end of input"
            raise self.error(f"expected {want}, got {got!r}")
        return self.next()


def _parse_int(lx: _Lexer, allow_sign: bool) -> int:
    sign = 1
    if allow_sign and lx.peek()[:2] == ("op", "-"):
        lx.next()
        sign = -1
    k, v, _ = lx.expect("num")
    return sign * int(v)


def _parse_term(lx: _Lexer):
    coef = Fraction(1)
    factors = []
    k, v, pos = lx.peek()
    if k == "num":
        lx.next()
        coef = Fraction(int(v))
        if lx.peek()[:2] == ("op", "/"):
            lx.next()
            den = _parse_int(lx, False)
            if den == 0:
                raise lx.error("zero denominator", pos)
            coef /= den
    while True:
        k, v, pos = lx.peek()
        if k == "op" and v == "*" and (factors or lx.toks[lx.i - 1][0] == "num"):
            lx.next()
            k, v, pos = lx.peek()
            if k != "id":
                raise lx.error("expected a variable after '*'")
        if k != "id":
            break
        lx.next()
        shift, exp = 0, 1
        if lx.peek()[:2] == ("op", "@"):
            lx.next()
            shift = _parse_int(lx, False)
        if lx.peek()[:2] == ("op", "^"):
            lx.next()
            exp = _parse_int(lx, True)
        line, col = lx._lc(pos)
        factors.append(_Factor(v, shift, exp, line, col))
    if k == "num":
        raise lx.error("unexpected number")
    return coef, factors


def _parse_terms(lx: _Lexer):
    """One polynomial as a list of ``(coef, factors)``."""
    terms = []
    sign = 1
    k, v, _ = lx.peek()
    if k == "op" and v in "+-":
        lx.next()
        sign = -1 if v == "-" else 1
    while True:
        k, v, pos = lx.peek()
        if k not in ("num", "id"):
            raise lx.error("expected a term")
        coef, factors = _parse_term(lx)
        terms.append((sign * coef, factors))
        k, v, _ = lx.peek()
        if k == "op" and v in "+-":
            lx.next()
            sign = -1 if v == "-" else 1
            continue
        if k is None or (k == "op" and v == ";"):
            return terms
        raise lx.error(f"unexpected {v!r}")


def _split_polys(text: str):
    lx = _Lexer(text)
    if not lx.toks:
        raise ParseError("empty input", 1, 1)
    polys = []
    while True:
        polys.append(_parse_terms(lx))
        k, v, _ = lx.peek()
        if k is None:
            return polys
        lx.expect("op", ";")
        if lx.peek()[0] is None:
            return polys


def _resolve(polys, main=None):
    names = {f.name for terms in polys for _, fs in terms for f in fs}
    coeff = {nm for nm in names if coeff_slot(nm) is not None}
    found = sorted(names - coeff, key=_natural_key)
    if main is None:
        main = found
    else:
        undeclared = [nm for nm in found if nm not in main]
        if undeclared:
            raise ParseError(f"undeclared variable {undeclared[0]!r}")
    return list(main)


def parse_poly(text: str, vars: VarTable | None = None) -> tuple:
    """Parse one polynomial; returns ``(DiffPoly, VarTable)``.

    Without ``vars`` a table is built from the names found: main
    variables in natural order, coefficient variables by slot.
    """
    polys = _split_polys(text)
    if len(polys) != 1:
        raise ParseError("expected a single polynomial")
    if vars is None:
        main = _resolve(polys)
        slots = sorted({coeff_slot(f.name) for _, fs in polys[0] for f in fs} - {None})
        blocks = []
        for i, k in slots:
            while len(blocks) <= i:
                blocks.append(0)
            blocks[i] = max(blocks[i], k + 1)
        if not main:
            main = ["y1"]
        vars = VarTable(tuple(main), tuple(blocks))
    return _build_poly(polys[0], vars), vars


def _build_poly(terms, vars: VarTable) -> DiffPoly:
    out = {}
    for coef, fs in terms:
        items = []
        for f in fs:
            try:
                idx = vars.index(f.name)
            except KeyError:
                raise ParseError(f"undeclared variable {f.name!r}", f.line, f.col) from None
            if f.exp < 0 and not vars.is_main(idx):
                raise ParseError("Laurent exponent on coefficient variable", f.line, f.col)
            items.append(((idx, f.shift), f.exp))
        m = mono(items)
        out[m] = out.get(m, 0) + coef
    return DiffPoly(out)


def parse_system(text: str, main=None) -> GenericSystem:
    """Parse ``;``-separated polynomials into a :class:`GenericSystem`.

    Each term is ``u_ik`` times a Laurent monomial in main variables.  A
    polynomial written without coefficient variables is read as a bare
    support, slot ``k`` being its ``k``-th term.
    """
    if text.lstrip().startswith("{"):
        return parse_document(text)[0]
    polys = _split_polys(text)
    main = _resolve(polys, main)
    supports = []
    for i, terms in enumerate(polys):
        slots = {}
        bare = all(coeff_slot(f.name) is None for _, fs in terms for f in fs)
        for t, (coef, fs) in enumerate(terms):
            cvars = [f for f in fs if coeff_slot(f.name) is not None]
            rest = [f for f in fs if coeff_slot(f.name) is None]
            where = fs[0] if fs else None
            line, col = (where.line, where.col) if where else (1, 1)
            for f in cvars:
                if f.exp < 0:
                    raise ParseError("Laurent exponent on coefficient variable", f.line, f.col)
            if coef != 1:
                raise ParseError("generic system terms must have coefficient 1", line, col)
            if bare:
                k = t
            else:
                if len(cvars) != 1 or cvars[0].exp != 1 or cvars[0].shift != 0:
                    raise ParseError("each term needs exactly one coefficient variable", line, col)
                bi, k = coeff_slot(cvars[0].name)
                if bi != i:
                    raise ParseError(f"{cvars[0].name} used in polynomial {i}", cvars[0].line, cvars[0].col)
                if k in slots:
                    raise ParseError(f"{cvars[0].name} used twice", cvars[0].line, cvars[0].col)
            m = mono(((main.index(f.name), f.shift), f.exp) for f in rest)
            if m in slots.values():
                raise ParseError("duplicate monomial in one support", line, col)
            slots[k] = m
        if sorted(slots) != list(range(len(slots))):
            raise ParseError(f"coefficient slots of polynomial {i} are not contiguous from 0")
        supports.append([slots[k] for k in range(len(slots))])
    try:
        return GenericSystem.from_supports(main, supports)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_document(text: str):
    """A system document: JSON with ``system`` text, optional ``main`` and ``options``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "system" not in doc:
        raise ParseError("document needs a 'system' field")
    sys_ = parse_system(doc["system"], doc.get("main"))
    return sys_, doc.get("options", {})


def format_system(sys_: GenericSystem) -> str:
    return " ; ".join(to_string(sys_.poly(i), sys_.vars) for i in range(len(sys_)))


def format_document(sys_: GenericSystem, options=None) -> str:
    doc = {"version": 1, "main": list(sys_.vars.main), "system": format_system(sys_)}
    if options:
        doc["options"] = options
    return json.dumps(doc)


# ---------------------------------------------------------------------------
# certificates

def _order_json(o):
    return None if o == NEG_INF else int(o)


def certificate_dict(cert) -> dict:
    vt = cert.vars
    res = []
    for c, m in cert.resultant.terms:
        res.append([c.numerator, c.denominator, [[vt.name(v), s, e] for (v, s), e in m]])
    out = {
        "resultant": res,
        "orders": [_order_json(o) for o in cert.orders],
        "degree": cert.degree,
    }
    if cert.verification is not None:
        out["verification"] = cert.verification
    return out


def emit_certificate(cert, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(certificate_dict(cert)) + "\n").encode()
    if fmt == "text":
        return (to_string(cert.resultant, cert.vars) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def read_certificate_poly(data, vars: VarTable) -> DiffPoly:
    """The resultant polynomial of a JSON certificate (dict or text)."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    terms = {}
    for num, den, factors in data["resultant"]:
        m = mono(((vars.index(nm), s), e) for nm, s, e in factors)
        terms[m] = Fraction(num, den)
    return DiffPoly(terms)
