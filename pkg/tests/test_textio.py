import json

import pytest

from diffres.diffpoly import DiffPoly, mono, to_string
from diffres.engine import make_certificate
from diffres.errors import ParseError
from diffres.textio import (emit_certificate, format_document, format_system, parse_document,
                            parse_poly, parse_system, read_certificate_poly)
from _systems import ALL, EX0, EX2


def test_parse_ex0():
    s = parse_system(EX0)
    assert s.vars.main == ("y1",)
    assert s.supports == (((), (((0, 0), 2),)), ((((0, 1), 1),), (((0, 0), 1),)))


def test_parse_ex2():
    s = parse_system(EX2)
    assert s.vars.blocks == (2, 2, 2)
    assert s.supports[1][1] == mono({(0, 1): 1, (1, 1): 1})


def test_parse_laurent():
    p, vt = parse_poly("y1^-1 + y2")
    assert set(p.monomials()) == {mono({(0, 0): -1}), mono({(1, 0): 1})}


def test_optional_star_and_rationals():
    p, vt = parse_poly("2/3 y1 y2@1^2 - y1")
    assert p == parse_poly("2/3*y1*y2@1^2 - y1", vt)[0]


@pytest.mark.parametrize("text, message, col", [
    ("u00 + * y1 ; u10 + u11*y1", "expected a term", 7),
    ("u00 + u01*y1 ; u10^-1 + u11*y1", "Laurent exponent on coefficient variable", 16),
    ("u00 + u01*y1 + u02*y1 ; u10 + u11*y1", "duplicate monomial in one support", None),
])
def test_parse_errors(text, message, col):
    with pytest.raises(ParseError, match=message) as info:
        parse_system(text)
    if col is not None:
        assert info.value.column == col
    assert info.value.line == 1


def test_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_system("u00 + u01*y1 ;\nu10 + # u11*y1")
    assert info.value.line == 2


def test_bare_support():
    s = parse_system("1 + y1^2 ; y1@1 + y1")
    assert s == parse_system(EX0)


@pytest.mark.parametrize("name", sorted(ALL))
def test_system_round_trip(name):
    s = parse_system(ALL[name])
    assert parse_system(format_system(s)) == s
    doc = format_document(s, {"engine": "ansatz"})
    s2, opts = parse_document(doc)
    assert s2 == s and opts == {"engine": "ansatz"}


def test_poly_round_trip_printer():
    p, vt = parse_poly("-3/4*u00@2*y1^-2 + y2@1*u01 + 5")
    assert parse_poly(to_string(p, vt), vt)[0] == p
    assert "*" in to_string(p, vt) and "@" in to_string(p, vt)


def test_emit_ex2_text():
    s = parse_system(EX2)
    sr = parse_poly("u01@1*u10 - u00@1*u11", s.vars)[0]
    cert = make_certificate(sr, s)
    assert emit_certificate(cert, "text") == b"u00@1*u11 - u01@1*u10\n"


def test_zero_order_certificate_round_trip():
    s = parse_system(ALL["ex-1"])
    sr = parse_poly("u00*u11 - u01*u10 + u22", s.vars)[0]
    cert = make_certificate(sr, s)
    text = emit_certificate(cert, "text").decode()
    assert parse_poly(text.strip(), s.vars)[0] == cert.resultant
    assert read_certificate_poly(emit_certificate(cert, "json"), s.vars) == cert.resultant


def test_emit_ex0_json():
    s = parse_system(EX0)
    sr = parse_poly("u10^2*u01*u00@1 - u11^2*u00*u01@1", s.vars)[0]
    cert = make_certificate(sr, s)
    out = emit_certificate(cert, "json")
    data = json.loads(out)
    assert data["orders"] == [1, 0] and data["degree"] == 4
    assert emit_certificate(cert, "json") == out
    # terms appear leading first, coefficients as [num, den, factors]
    assert data["resultant"][0][:2] == [1, 1]


def test_null_orders_in_json():
    s = parse_system(EX2)
    cert = make_certificate(parse_poly("u00@1*u11 - u01@1*u10", s.vars)[0], s)
    assert json.loads(emit_certificate(cert, "json"))["orders"] == [1, 0, None]


def test_document_errors():
    with pytest.raises(ParseError):
        parse_document("{not json")
    with pytest.raises(ParseError):
        parse_document('{"main": ["y1"]}')
    with pytest.raises(ParseError, match="undeclared"):
        parse_document(json.dumps({"system": EX2, "main": ["y1"]}))
