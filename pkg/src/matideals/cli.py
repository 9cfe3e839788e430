"""Command line interface.

Exit codes: 0 on success (including negative answers to queries), 1 on
usage or input errors, 2 when a verification check fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional, Sequence

from . import ideals as th
from .gf import FieldError, field_from_order
from .matlin import Mat, MatrixError
from .oracle import DEFAULT_ORACLE_BOUND, OracleBoundError, brute_lattice, cross_check, to_dot
from .serialize import load_mat, mat_to_json, parse_mat

FORMATS = {
    "count": ("text", "json", "csv"),
    "subspaces": ("text", "json", "csv"),
    "idempotents": ("text", "json", "csv"),
    "generators": ("text", "json", "csv"),
    "same-ideal": ("text", "json"),
    "pivots": ("text", "json"),
    "verify": ("text", "json"),
    "lattice": ("json", "dot"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="matrix size")
    common.add_argument("--q", type=int, default=2, help="field order p^e (default 2)")
    common.add_argument("--modulus", help="irreducible modulus coefficients c0,...,ce")
    common.add_argument("--format", dest="fmt", help="output format")
    common.add_argument("--oracle-bound", type=int, default=DEFAULT_ORACLE_BOUND,
                        help="largest q^(n^2) the brute-force oracle accepts")

    parser = _Parser(prog="matideals", description="Left ideals and idempotents of M_n(F_q).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("count", parents=[common], help="per-rank counting table")
    for name, what in (("subspaces", "k-dimensional subspaces of F_q^n"),
                       ("idempotents", "the canonical idempotents E(n,k)")):
        p = sub.add_parser(name, parents=[common], help=f"enumerate {what}")
        p.add_argument("--k", type=int, required=True)
    for name, what, nargs in (("generators", "all idempotent generators of <S>", 1),
                              ("same-ideal", "compare the left ideals of two matrices", 2),
                              ("pivots", "pivotal positions of a matrix in E(n,k)", 1)):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("--mat", action="append", default=[], help='matrix as "a,b;c,d"')
        p.add_argument("--in", dest="infiles", action="append", default=[], help="matrix JSON file")
        p.set_defaults(nmats=nargs)
    sub.add_parser("verify", parents=[common], help="oracle cross-check of all counting results")
    sub.add_parser("lattice", parents=[common], help="the left-ideal lattice as JSON or DOT")
    return parser


def _field(args):
    modulus = None
    if args.modulus:
        try:
            modulus = [int(c) for c in args.modulus.split(",")]
        except ValueError:
            raise UsageError(f"malformed modulus {args.modulus!r}")
    return field_from_order(args.q, modulus)


def _require_n(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    return args.n


def _matrices(args, F) -> list[Mat]:
    mats = [parse_mat(s, F) for s in args.mat] + [load_mat(p, F) for p in args.infiles]
    if len(mats) != args.nmats:
        raise UsageError(f"{args.command} needs {args.nmats} matrix argument(s), got {len(mats)}")
    for M in mats:
        if not M.is_square:
            raise UsageError(f"matrix {M} is not square")
        if args.n is not None and M.rows != args.n:
            raise UsageError(f"matrix {M} is not {args.n}x{args.n}")
    return mats


def _jsonl(out, obj) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_count(args, F, out) -> int:
    table = th.count_table(_require_n(args), F)
    header = ["k", "ideals", "generators_per_ideal", "rank_matrices", "canonical_family_size"]
    if args.fmt == "json":
        out.write(json.dumps(table.to_json(), indent=2) + "\n")
    elif args.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(table.rows())
    else:
        out.write(f"n={table.n} q={table.q}\n")
        out.write(" ".join(header) + "\n")
        for row in table.rows():
            out.write(" ".join(str(x) for x in row) + "\n")
    return 0


def _check_k(args, n) -> int:
    if not 0 <= args.k <= n:
        raise UsageError(f"--k must be in [0, {n}]")
    return args.k


def cmd_subspaces(args, F, out) -> int:
    n = _require_n(args)
    k = _check_k(args, n)
    w = csv.writer(out, lineterminator="\n") if args.fmt == "csv" else None
    if w:
        w.writerow(["pivots", "basis"])
    for key in th.enumerate_subspaces(n, k, F):
        basis = str(key.reduced_rows)
        if args.fmt == "json":
            _jsonl(out, key.to_json())
        elif w:
            w.writerow([" ".join(map(str, key.pivot_cols)), basis])
        else:
            out.write(f"pivots {list(key.pivot_cols)} basis {basis}\n")
    return 0


def cmd_idempotents(args, F, out) -> int:
    n = _require_n(args)
    k = _check_k(args, n)
    w = csv.writer(out, lineterminator="\n") if args.fmt == "csv" else None
    if w:
        w.writerow(["pivots", "matrix"])
    for C in th.enumerate_canonical_idempotents(n, k, F):
        if args.fmt == "json":
            _jsonl(out, C.to_json())
        elif w:
            w.writerow([" ".join(map(str, C.pivots)), str(C.matrix)])
        else:
            out.write(f"pivots {list(C.pivots)} matrix {C.matrix}\n")
    return 0


def cmd_generators(args, F, out) -> int:
    (S,) = _matrices(args, F)
    try:
        gens = th.idempotent_generators(S)
    except th.NotIdempotentError:
        raise UsageError(f"{S} is not idempotent")
    if args.fmt == "json":
        for M in gens:
            _jsonl(out, mat_to_json(M))
    elif args.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["matrix"])
        w.writerows([str(M)] for M in gens)
    else:
        for M in gens:
            out.write(f"{M}\n")
    return 0


def cmd_same_ideal(args, F, out) -> int:
    R, S = _matrices(args, F)
    same = th.same_left_ideal(R, S)
    triple = th.check_equivalence_triple(R, S)
    if args.fmt == "json":
        out.write(json.dumps({"same_left_ideal": same, "triple": list(triple)}) + "\n")
    else:
        out.write(f"same_left_ideal {str(same).lower()}\n")
        out.write("triple " + " ".join(str(b).lower() for b in triple) + "\n")
    return 0


def cmd_pivots(args, F, out) -> int:
    (A,) = _matrices(args, F)
    try:
        piv, err = th.pivotal_positions(A), None
    except th.NotCanonical as exc:
        piv, err = None, exc
    if args.fmt == "json":
        obj = {"pivotal_positions": piv} if err is None else \
            {"pivotal_positions": None, "violated_condition": err.condition, "reason": str(err)}
        out.write(json.dumps(obj) + "\n")
    elif err is None:
        out.write(f"{piv}\n")
    else:
        out.write(f"not in E(n,k): {err}\n")
    return 0


def cmd_verify(args, F, out) -> int:
    report = brute_lattice(_require_n(args), F, bound=args.oracle_bound)
    verdicts = cross_check(report)
    if args.fmt == "json":
        out.write(json.dumps([v.to_json() for v in verdicts], indent=2) + "\n")
    else:
        for v in verdicts:
            out.write(v.line() + "\n")
    return 0 if all(v.passed for v in verdicts) else 2


def cmd_lattice(args, F, out) -> int:
    report = brute_lattice(_require_n(args), F, bound=args.oracle_bound)
    if args.fmt == "dot":
        out.write(to_dot(report))
    else:
        out.write(json.dumps(report.to_json()) + "\n")
    return 0


COMMANDS = {
    "count": cmd_count,
    "subspaces": cmd_subspaces,
    "idempotents": cmd_idempotents,
    "generators": cmd_generators,
    "same-ideal": cmd_same_ideal,
    "pivots": cmd_pivots,
    "verify": cmd_verify,
    "lattice": cmd_lattice,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    allowed = FORMATS[args.command]
    if args.fmt is None:
        args.fmt = allowed[0]
    try:
        if args.fmt not in allowed:
            raise UsageError(f"format {args.fmt!r} not available for {args.command}; "
                             f"choose from {', '.join(allowed)}")
        F = _field(args)
        return COMMANDS[args.command](args, F, out)
    except (UsageError, FieldError, MatrixError, OracleBoundError, OSError, ValueError) as exc:
        print(f"matideals: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
