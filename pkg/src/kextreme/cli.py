"""Command-line entry point: ``kextreme <subcommand> [options]``.

Exit status: 0 on success, 1 on a domain error (an ``{"error": ...}`` object
is written to the output), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import jsonio as J
from .errors import ConstructionFailed, DomainError
from .extremality import gen_witness, k_extreme, verify_witness
from .major import equimeasurable, marcinkiewicz_norm, submajorizes
from .matop import (
    DEFAULT_PRECISION,
    DEFAULT_TOL,
    matrix_k_extreme_sufficient,
    mu_of_matrix,
    singular_values,
)
from .oracle import face_dimension, random_witness_search
from .stepfn import head_integral, rearrange, tail_value

SUBCOMMANDS = (
    "rearrange",
    "major",
    "mnorm",
    "orbit-extreme",
    "witness",
    "verify-witness",
    "matrix-sv",
    "matrix-extreme",
    "oracle-face",
    "oracle-search",
    "selftest",
)


def _need_k(args) -> int:
    if args.k is None:
        raise J.MalformedInput("--k is required for this subcommand")
    if args.k < 1:
        raise J.MalformedInput("--k must be positive")
    return args.k


# -- handlers: each returns (payload, table) where table is a CSV-able list or None


def _rearrange(data, args):
    f = J.dec_step(data["f"] if isinstance(data, dict) and "f" in data else data)
    h = rearrange(f)
    table = [("start", "end", "value")] + [tuple(J.enc_rat(x) for x in p) for p in h.pieces]
    return J.enc_step(h), table


def _major(data, args):
    f, g = J.dec_step(J._get(data, "f")), J.dec_step(J._get(data, "g"))
    out = {
        "submajorizes": submajorizes(f, g),
        "reverse": submajorizes(g, f),
        "equimeasurable": equimeasurable(f, g),
        "tail_value_f": J.enc_rat(tail_value(f)),
        "tail_value_g": J.enc_rat(tail_value(g)),
        "head_integral_f": [[J.enc_rat(t), J.enc_rat(v)] for t, v in head_integral(f).breakpoints],
    }
    return out, None


def _mnorm(data, args):
    g = J.dec_step(J._get(data, "g"))
    if "fs" in data:
        fs = [J.dec_step(x) for x in data["fs"]]
        norms = [J.enc_rat(marcinkiewicz_norm(f, g)) for f in fs]
        table = [("index", "norm")] + [(str(i), v) for i, v in enumerate(norms)]
        return {"norms": norms}, table
    f = J.dec_step(J._get(data, "f"))
    v = J.enc_rat(marcinkiewicz_norm(f, g))
    return {"norm": v}, [("norm",), (v,)]


def _orbit_extreme(data, args):
    ball, f = J.dec_ball(J._get(data, "ball")), J.dec_step(J._get(data, "f"))
    v = k_extreme(ball, f, _need_k(args), want_witness=args.want_witness)
    out = J.enc_verdict(v)
    if args.want_witness and not v.k_extreme:
        out["witness_verified"] = verify_witness(v.witness)
    return out, None


def _witness(data, args):
    ball, f = J.dec_ball(J._get(data, "ball")), J.dec_step(J._get(data, "f"))
    return J.enc_witness(gen_witness(ball, f, _need_k(args))), None


def _verify_witness(data, args):
    return {"valid": verify_witness(J.dec_witness(data))}, None


def _matrix_sv(data, args):
    rows = J.dec_matrix(data)
    prof = singular_values(rows, args.tol)
    mu = mu_of_matrix(rows, args.tol, DEFAULT_PRECISION)
    out = {
        "values": list(prof.values),
        "mu": J.enc_step(mu),
        "precision": J.enc_rat(DEFAULT_PRECISION),
        "tol": args.tol,
    }
    table = [("index", "singular_value")] + [(str(i), repr(v)) for i, v in enumerate(prof.values)]
    return out, table


def _matrix_extreme(data, args):
    rows = J.dec_matrix(J._get(data, "matrix"))
    ball = J.dec_ball(J._get(data, "ball"))
    res = matrix_k_extreme_sufficient(rows, ball, _need_k(args), args.tol)
    return {
        "sufficient": res["sufficient"],
        "reason": res["reason"],
        "mu_equal": res["mu_equal"],
        "profile": J.enc_step(res["profile"]),
        "precision": J.enc_rat(res["precision"]),
    }, None


def _oracle_face(data, args):
    spec = J.dec_norm_spec(J._get(data, "spec"))
    xs = [J.dec_vector(x) for x in data["xs"]] if "xs" in data else [J.dec_vector(J._get(data, "x"))]
    reports = []
    for x in xs:
        r = J.enc_face(face_dimension(spec, x))
        if args.k is not None:
            r["k_extreme"] = r["face_dim"] <= args.k - 1
        reports.append(r)
    table = [("index", "norm_value", "active_rank", "face_dim")] + [
        (str(i), r["norm_value"], str(r["active_rank"]), str(r["face_dim"]))
        for i, r in enumerate(reports)
    ]
    payload = reports[0] if "xs" not in data else {"reports": reports}
    return payload, table


def _oracle_search(data, args):
    spec = J.dec_norm_spec(J._get(data, "spec"))
    x = J.dec_vector(J._get(data, "x"))
    w = random_witness_search(spec, x, _need_k(args), args.trials, args.seed)
    out = {"found": w is not None}
    if w is not None:
        out["witness"] = J.enc_vector_witness(w)
    return out, None


HANDLERS = {
    "rearrange": _rearrange,
    "major": _major,
    "mnorm": _mnorm,
    "orbit-extreme": _orbit_extreme,
    "witness": _witness,
    "verify-witness": _verify_witness,
    "matrix-sv": _matrix_sv,
    "matrix-extreme": _matrix_extreme,
    "oracle-face": _oracle_face,
    "oracle-search": _oracle_search,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kextreme", description=__doc__.splitlines()[0])
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("input_path", nargs="?", default=None, help="input JSON file or '-'")
    p.add_argument("--input", dest="input_opt", default=None)
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--want-witness", action=argparse.BooleanOptionalAction, default=True)
    return p


def _render(payload, table, fmt: str) -> str:
    if fmt == "csv":
        if table is None:
            raise J.MalformedInput("CSV output is only available for tabular results")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(table)
        return buf.getvalue()
    if fmt == "text" and table is not None:
        return "\n".join("  ".join(row) for row in table) + "\n"
    return json.dumps(payload, indent=2) + "\n"


def _selftest(out) -> int:
    from .selftest import run

    rows = run()
    width = max(len(n) for n, _, _ in rows)
    for name, ok, detail in rows:
        out.write(f"{'PASS' if ok else 'FAIL'}  {name.ljust(width)}  {detail}\n".rstrip() + "\n")
    passed = sum(ok for _, ok, _ in rows)
    out.write(f"{passed}/{len(rows)} passed\n")
    return 0 if passed == len(rows) else 1


def run(argv=None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0

    def emit(text: str):
        if args.output == "-":
            stdout.write(text)
        else:
            with open(args.output, "w") as fh:
                fh.write(text)

    if args.subcommand == "selftest":
        buf = io.StringIO()
        code = _selftest(buf)
        emit(buf.getvalue())
        return code

    path = args.input_opt or args.input_path or "-"
    try:
        text = stdin.read() if path == "-" else open(path).read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        emit(json.dumps({"error": {"code": "malformed_input", "message": str(e)}}) + "\n")
        return 2
    try:
        payload, table = HANDLERS[args.subcommand](data, args)
        emit(_render(payload, table, args.format))
        return 0
    except (DomainError, ConstructionFailed) as e:
        emit(json.dumps({"error": {"code": e.code, "message": str(e)}}) + "\n")
        return 1
    except (J.MalformedInput, KeyError, TypeError, ValueError, AttributeError) as e:
        emit(json.dumps({"error": {"code": "malformed_input", "message": str(e)}}) + "\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
