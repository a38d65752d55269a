"""Command line front end: ``diffres <subcommand> [input]``.

Every subcommand reads a system (plain text grammar or a JSON system
document) from a file or stdin.  Exit codes: 0 success, 2 parse error,
3 non-essential input, 4 bounds exceeded, 5 internal-consistency failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys as _sys

from .diffpoly import NEG_INF
from .engine import attach_verification, make_certificate, search_resultant, verify_certificate
from .errors import DiffresError, InternalConsistencyError, NotEssentialError, SizeGuardExceeded
from .jacobi import delete_row, jacobi_number, order_matrix, search_bounds
from .polytope import Polytope, mixed_volume
from .reduction import (dense_resultant, dense_system, essential_subset_minimal_ranking, from_prolongation,
                        mixed_volume_degrees, resultant_via_reduction, smith_transform,
                        specialize_to_essential_vars)
from .support import GenericSupportMatrix, rank_generic, super_essential_subset
from .textio import emit_certificate, parse_document, parse_system, read_certificate_poly


def _fmt(x) -> str:
    return "-inf" if x == NEG_INF else str(x)


def _enc(x):
    if isinstance(x, (list, tuple)):
        return [_enc(y) for y in x]
    return None if x == NEG_INF else x


def _read(path: str) -> str:
    if path == "-":
        return _sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args):
    text = _read(args.input)
    if text.lstrip().startswith("{"):
        return parse_document(text)
    return parse_system(text), {}


def _out(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _rank_trials(args) -> int:
    return args.trials or 3


def _check_trials(args) -> int:
    return args.trials or 5


def _mode(args) -> str:
    return "exact" if getattr(args, "exact", False) else "probabilistic"


# ---------------------------------------------------------------------------
# subcommands

def cmd_essential(args) -> int:
    sys, _ = _load(args)
    r = rank_generic(GenericSupportMatrix(sys), _mode(args), _rank_trials(args), random.Random(args.seed))
    ok = r == sys.n
    _out(args, f"{'essential' if ok else 'not essential'} (rank {r}, n {sys.n})",
         {"essential": ok, "rank": r, "n": sys.n})
    return 0 if ok else NotEssentialError.exit_code


def cmd_super_essential(args) -> int:
    sys, _ = _load(args)
    T = super_essential_subset(sys, _mode(args), _rank_trials(args), random.Random(args.seed))
    _out(args, "{" + ",".join(map(str, T)) + "}", {"T": list(T)})
    return 0


def cmd_jacobi(args) -> int:
    sys, _ = _load(args)
    A = order_matrix(sys)
    J = [jacobi_number(delete_row(A, i)) for i in range(len(A))]
    lines = ["order matrix:"] + ["  " + " ".join(_fmt(x) for x in row) for row in A]
    lines.append("J = (" + ", ".join(_fmt(x) for x in J) + ")")
    _out(args, "\n".join(lines), {"order_matrix": _enc(A), "J": _enc(J)})
    return 0


def cmd_bounds(args) -> int:
    sys, _ = _load(args)
    rep = search_bounds(sys, _mode(args), random.Random(args.seed))
    d = rep.as_dict()
    order = ["J", "lowest_shift", "gamma", "J_modified", "T", "J_T", "lord", "s_total",
             "s_max", "J_tilde", "J_under", "final", "clamped"]
    lines = []
    for k in order:
        v = getattr(rep, k)
        if isinstance(v, (list, tuple)):
            v = "(" + ", ".join(_fmt(x) for x in v) + ")"
        lines.append(f"{k} = {v}")
    _out(args, "\n".join(lines), d)
    return 0


def cmd_resultant(args) -> int:
    sys, opts = _load(args)
    engine = args.engine or opts.get("engine", "ansatz")
    if engine == "ansatz":
        cert = search_resultant(sys, multihomog=args.multihomog, seed=args.seed,
                                bounds_mode=_mode(args))
    elif engine == "reduction":
        cert = resultant_via_reduction(sys, seed=args.seed, mode=_mode(args))
    else:
        raise DiffresError(f"unknown engine {engine!r}")
    attach_verification(cert, sys, _check_trials(args), args.seed)
    _sys.stdout.buffer.write(emit_certificate(cert, "json" if args.json else "text"))
    _sys.stdout.flush()
    if not cert.verification["passed"]:
        return InternalConsistencyError.exit_code
    return 0


def cmd_verify(args) -> int:
    sys, _ = _load(args)
    poly = read_certificate_poly(_read(args.certificate), sys.vars)
    cert = make_certificate(poly, sys)
    res = verify_certificate(cert, sys, _check_trials(args), args.seed)
    _out(args, "passed" if res["passed"] else
         f"failed (vanishing {res['vanishing']}, homogeneous {res['homogeneous']})", res)
    return 0 if res["passed"] else InternalConsistencyError.exit_code


def _int_list(text: str) -> list:
    return [int(x) for x in text.replace(",", " ").split()]


def cmd_dense(args) -> int:
    s, m = _int_list(args.orders), _int_list(args.degrees)
    if len(s) != len(m) or len(s) < 2:
        raise DiffresError("--orders and --degrees need the same length >= 2")
    try:
        cert, report = dense_resultant(len(s) - 1, s, m, args.size_guard)
    except SizeGuardExceeded as exc:
        print(str(exc), file=_sys.stderr)
        _out(args, _report_text(exc.report), {"report": exc.report})
        return exc.exit_code
    attach_verification(cert, _dense_sys(s, m), _check_trials(args), args.seed)
    if args.json:
        body = json.loads(emit_certificate(cert, "json"))
        print(json.dumps({"certificate": body, "report": report}, sort_keys=True))
    else:
        print(emit_certificate(cert, "text").decode(), end="")
        print(_report_text(report))
    return 0


def _dense_sys(s, m):
    return dense_system(len(s) - 1, s, m)


def _report_text(rep: dict) -> str:
    keys = ["orders", "cap", "variables", "polynomials", "layer_degrees", "block_degrees", "degree"]
    return "\n".join(f"{k} = {rep.get(k)}" for k in keys)


def cmd_mixed_volume(args) -> int:
    if args.polytopes:
        pts = json.loads(args.polytopes)
        mv = mixed_volume([Polytope([tuple(p) for p in P]) for P in pts])
        _out(args, str(mv), {"mixed_volume": str(mv)})
        return 0
    sys, _ = _load(args)
    rep = search_bounds(sys, _mode(args), random.Random(args.seed))
    alg = from_prolongation(sys, rep.J_T)
    sub = alg.restrict(essential_subset_minimal_ranking(alg, seed=args.seed))
    special, _, _ = specialize_to_essential_vars(sub, seed=args.seed)
    strong, _ = smith_transform(special)
    degs = mixed_volume_degrees(strong)
    labels = [f"P{i}@{r}" for i, r in strong.labels]
    _out(args, "\n".join(f"{lab}: {d}" for lab, d in zip(labels, degs)) + f"\ntotal: {sum(degs)}",
         {"labels": labels, "degrees": degs, "total": sum(degs)})
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int, default=0, help="seed for probabilistic steps")
    common.add_argument("--trials", type=int, default=None,
                        help="random trials (default 3 for ranks, 5 for verification)")
    common.add_argument("--exact", action="store_true", help="exact symbolic ranks")

    p = argparse.ArgumentParser(prog="diffres",
                                description="Sparse difference resultants of generic Laurent systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, needs_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if needs_input:
            sp.add_argument("input", nargs="?", default="-", help="system file (default stdin)")
        sp.set_defaults(func=fn)
        return sp

    add("essential", cmd_essential, "Laurent transformal essentiality test")
    add("super-essential", cmd_super_essential, "super-essential subset T")
    add("jacobi", cmd_jacobi, "order matrix and Jacobi numbers")
    add("bounds", cmd_bounds, "all order bounds")
    r = add("resultant", cmd_resultant, "compute the sparse difference resultant")
    r.add_argument("--engine", choices=["ansatz", "reduction"], default=None)
    r.add_argument("--multihomog", action=argparse.BooleanOptionalAction, default=True)
    v = add("verify", cmd_verify, "check a JSON certificate against a system")
    v.add_argument("--certificate", required=True)
    d = add("dense-resultant", cmd_dense, "generic dense difference resultant", needs_input=False)
    d.add_argument("--orders", required=True, help="s_0,...,s_n")
    d.add_argument("--degrees", required=True, help="m_0,...,m_n")
    d.add_argument("--size-guard", type=int, default=20000)
    mv = add("mixed-volume", cmd_mixed_volume, "mixed volumes of the reduced system")
    mv.add_argument("--polytopes", help="JSON list of point lists instead of a system")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DiffresError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
