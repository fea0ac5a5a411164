"""Command-line front end.

Exit codes: 0 success or "true", 3 a negative answer (avoids, not
superfluous, witness found), 2 usage errors, 1 resource bounds and other
violated preconditions, 4 a brute-force disagreement with the criterion.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional, Sequence

from . import coincidence, diagonals, enumeration, mesh, perm
from .errors import PreconditionError, TheoremViolation

EXIT_OK = 0
EXIT_BOUND = 1
EXIT_USAGE = 2
EXIT_FALSE = 3
EXIT_THEOREM = 4

JOBS_ENV = "MESHPAT_JOBS"

TABLE_COLUMNS = ["perm", "k", "universe", "singletons", "candidates", "sup_mesh", "non_superfluous"]


def _perm_arg(text: str) -> perm.Permutation:
    try:
        return perm.parse_perm(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pattern_arg(text: str):
    try:
        if ":" in text:
            return mesh.parse_mesh_pattern(text)
        return perm.parse_perm(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mesh_arg(text: str) -> mesh.MeshPattern:
    try:
        return mesh.parse_mesh_pattern(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _diag_arg(text: str) -> diagonals.EnclosedDiagonal:
    try:
        return diagonals.parse_diagonal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _occ_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad occurrence {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--jobs", type=_positive, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")

    parser = argparse.ArgumentParser(prog="meshpat", description="Superfluous meshes of mesh patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("occurrences", parents=[common], help="occurrences of a classical or mesh pattern")
    p.add_argument("host", type=_perm_arg)
    p.add_argument("pattern", type=_pattern_arg)

    p = sub.add_parser("contains", parents=[common], help="does the host contain the pattern")
    p.add_argument("host", type=_perm_arg)
    p.add_argument("pattern", type=_pattern_arg)

    p = sub.add_parser("diagonals", parents=[common], help="candidate (perm) or enclosed (mesh pattern) diagonals")
    p.add_argument("pattern", type=_pattern_arg)

    p = sub.add_parser("superfluous", parents=[common], help="is the mesh superfluous")
    p.add_argument("pattern", type=_mesh_arg)

    p = sub.add_parser("supmesh", parents=[common], help="number of superfluous meshes of a permutation")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("--oracle", action="store_true", help="cross-check by direct subset enumeration")

    p = sub.add_parser("table", parents=[common], help="sup-mesh for every permutation of length k")
    p.add_argument("k", type=_positive)
    p.add_argument("--oracle", action="store_true", help="cross-check each row by direct subset enumeration")

    p = sub.add_parser("extremal", parents=[common], help="extremal sup-mesh values and permutations")
    p.add_argument("k", type=_positive)

    p = sub.add_parser("verify", parents=[common], help="brute-force coincidence check")
    p.add_argument("pattern", type=_mesh_arg)
    p.add_argument("--nmax", type=_positive, default=None, help="largest host length (default k+2)")

    p = sub.add_parser("witness", parents=[common], help="non-coincidence witness for a candidate diagonal")
    p.add_argument("perm", type=_perm_arg)
    p.add_argument("diagonal", type=_diag_arg, help='"((i,j),eps,h)" or "i,j,eps,h"')

    p = sub.add_parser("repair", parents=[common], help="walk an occurrence down to a mesh occurrence")
    p.add_argument("host", type=_perm_arg)
    p.add_argument("pattern", type=_mesh_arg)
    p.add_argument("occurrence", type=_occ_arg, nargs="?", help="comma-separated positions (default: first violated)")

    return parser


class _Out:
    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.fmt = fmt

    def line(self, text: str) -> None:
        print(text, file=self.stream)

    def obj(self, data) -> None:
        print(json.dumps(data, sort_keys=True), file=self.stream)

    def rows(self, header: list[str], rows) -> None:
        writer = csv.writer(self.stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def _cmd_occurrences(args, out: _Out) -> int:
    if isinstance(args.pattern, mesh.MeshPattern):
        occs = list(mesh.mesh_occurrences(args.host, args.pattern))
    else:
        occs = list(perm.occurrences(args.host, args.pattern))
    if out.fmt == "json":
        out.obj({"host": str(args.host), "pattern": str(args.pattern), "count": len(occs),
                 "occurrences": [list(o) for o in occs]})
    elif out.fmt == "csv":
        out.rows(["occurrence"], ([",".join(map(str, o))] for o in occs))
    else:
        out.line(str(len(occs)))
    return EXIT_OK


def _cmd_contains(args, out: _Out) -> int:
    if isinstance(args.pattern, mesh.MeshPattern):
        found = mesh.contains_mesh(args.host, args.pattern)
    else:
        found = perm.contains_classical(args.host, args.pattern)
    if out.fmt == "json":
        out.obj({"host": str(args.host), "pattern": str(args.pattern), "contains": found})
    elif out.fmt == "csv":
        out.rows(["host", "pattern", "contains"], [[str(args.host), str(args.pattern), int(found)]])
    else:
        out.line("yes" if found else "no")
    return EXIT_OK if found else EXIT_FALSE


def _cmd_diagonals(args, out: _Out) -> int:
    if isinstance(args.pattern, mesh.MeshPattern):
        found = diagonals.enclosed_diagonals(args.pattern)
    else:
        found = list(diagonals.candidate_diagonals(args.pattern))
    if out.fmt == "json":
        for d in found:
            out.obj(d.to_json())
    elif out.fmt == "csv":
        out.rows(["anchor_col", "anchor_row", "eps", "h"],
                 ([d.anchor[0], d.anchor[1], d.eps, d.h] for d in found))
    else:
        for d in found:
            out.line(str(d))
    return EXIT_OK


def _cmd_superfluous(args, out: _Out) -> int:
    found = diagonals.enclosed_diagonals(args.pattern)
    if out.fmt == "json":
        out.obj({"pattern": str(args.pattern), "superfluous": not found,
                 "enclosed_diagonals": [d.to_json() for d in found]})
    elif out.fmt == "csv":
        out.rows(["pattern", "superfluous", "enclosed_diagonals"],
                 [[str(args.pattern), int(not found), " ".join(map(str, found))]])
    elif not found:
        out.line("yes")
    else:
        noun = "enclosed diagonal" if len(found) == 1 else "enclosed diagonals"
        out.line(f"no: {noun} {', '.join(map(str, found))}")
    return EXIT_OK if not found else EXIT_FALSE


def _oracle_check(report: enumeration.SupMeshReport) -> None:
    direct = enumeration.sup_mesh_direct(report.perm)
    if direct != report.sup_mesh:
        raise TheoremViolation(
            f"{report.perm}: inclusion-exclusion gives {report.sup_mesh}, direct enumeration {direct}"
        )


def _cmd_supmesh(args, out: _Out) -> int:
    report = enumeration.sup_mesh_ie(args.perm)
    if args.oracle:
        _oracle_check(report)
    row = report.to_row()
    if out.fmt == "json":
        out.obj(row)
    elif out.fmt == "csv":
        out.rows(TABLE_COLUMNS, [[row[c] for c in TABLE_COLUMNS]])
    else:
        out.line(str(report.sup_mesh))
    return EXIT_OK


def _cmd_table(args, out: _Out) -> int:
    reports = enumeration.sup_mesh_table(args.k, jobs=args.jobs)
    if args.oracle:
        for r in reports:
            _oracle_check(r)
    rows = [r.to_row() for r in reports]
    if out.fmt == "json":
        for row in rows:
            out.obj(row)
    elif out.fmt == "text":
        for row in rows:
            out.line(" ".join(f"{c}={row[c]}" for c in TABLE_COLUMNS))
    else:
        out.rows(TABLE_COLUMNS, ([row[c] for c in TABLE_COLUMNS] for row in rows))
    return EXIT_OK


def _cmd_extremal(args, out: _Out) -> int:
    ext = enumeration.extremal_permutations(args.k, jobs=args.jobs)
    if out.fmt == "json":
        out.obj(ext.to_json())
        return EXIT_OK
    if out.fmt == "csv":
        data = ext.to_json()
        out.rows(["key", "value"], ([key, " ".join(v) if isinstance(v, list) else v] for key, v in data.items()))
        return EXIT_OK
    out.line(f"min {ext.min_value} at {' '.join(map(str, ext.minimizers))}")
    if ext.maximizers:
        out.line(f"max {ext.max_value} at {' '.join(map(str, ext.maximizers))}")
    else:
        out.line(f"max {ext.max_value} unrealized: no permutation of length {ext.k} avoids adjacent values")
    out.line(f"max truncated-sum {ext.max_truncated}")
    out.line(f"table min {ext.table_min} at {' '.join(map(str, ext.table_argmin))}")
    out.line(f"table max {ext.table_max} at {' '.join(map(str, ext.table_argmax))}")
    return EXIT_OK


def _cmd_verify(args, out: _Out) -> int:
    report = coincidence.verify_coincidence(args.pattern, args.nmax)
    if out.fmt == "csv":
        out.rows(["n", "av_classical", "av_mesh"], report.per_length)
    elif out.fmt == "text":
        for n, a, b in report.per_length:
            out.line(f"n={n} av_classical={a} av_mesh={b}")
        out.line(report.verdict + (f" {report.witness}" if report.witness else ""))
    else:
        out.obj(report.to_json())
    return EXIT_OK if report.coincident else EXIT_FALSE


def _cmd_witness(args, out: _Out) -> int:
    w = coincidence.witness(args.perm, args.diagonal)
    if out.fmt == "json":
        out.obj({"perm": str(args.perm), "diagonal": args.diagonal.to_json(), "witness": str(w)})
    elif out.fmt == "csv":
        out.rows(["perm", "diagonal", "witness"], [[str(args.perm), str(args.diagonal), str(w)]])
    else:
        out.line(str(w))
    return EXIT_OK


def _cmd_repair(args, out: _Out) -> int:
    mp = args.pattern
    occ = args.occurrence
    if occ is None:
        occ = next((o for o in perm.occurrences(args.host, mp.perm) if mesh.violations(args.host, o, mp)), None)
        if occ is None:
            raise PreconditionError("no violated occurrence to repair")
    chain = mesh.repair_chain(args.host, mp, occ)
    if out.fmt == "json":
        for o, v, route in chain:
            out.obj({"occurrence": list(o), "violations": v, "route": route})
    elif out.fmt == "csv":
        out.rows(["occurrence", "violations", "route"], ([",".join(map(str, o)), v, r] for o, v, r in chain))
    else:
        for o, v, route in chain:
            out.line(f"{','.join(map(str, o))} {v} {route}")
    return EXIT_OK


_COMMANDS = {
    "occurrences": _cmd_occurrences,
    "contains": _cmd_contains,
    "diagonals": _cmd_diagonals,
    "superfluous": _cmd_superfluous,
    "supmesh": _cmd_supmesh,
    "table": _cmd_table,
    "extremal": _cmd_extremal,
    "verify": _cmd_verify,
    "witness": _cmd_witness,
    "repair": _cmd_repair,
}

# per-command default when --format is not given
_DEFAULT_FORMAT = {"table": "csv", "verify": "json"}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.jobs is None:
        args.jobs = _default_jobs()
    fmt = args.format or _DEFAULT_FORMAT.get(args.command, "text")
    try:
        return _COMMANDS[args.command](args, _Out(stdout, fmt))
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=stderr)
        return EXIT_THEOREM
    except PreconditionError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BOUND


def main() -> None:
    sys.exit(run())
