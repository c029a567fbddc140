"""Command-line front end: ``qfermion {table,bell,verify,dobinski,moments}``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
domain errors. Nothing is written to stdout when an error occurs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from qfermion import bargmann, dobinski, fock, pointprocess, triangles
from qfermion.errors import ParseError, QFermionError, RegimeError
from qfermion.laurent import format_rational, parse_rational
from qfermion.qnumbers import QKind

TRIANGLE_CHOICES = {
    "stirling2f": triangles.TriangleKind.STIRLING2F,
    "stirling1f": triangles.TriangleKind.STIRLING1F,
    "lahf": triangles.TriangleKind.LAHF,
    "antinormal-b": triangles.TriangleKind.ANTINORMAL_BOSON,
    "antinormal-f": triangles.TriangleKind.ANTINORMAL_FERMION,
}

IDENTITIES = (
    "falling",
    "first-kind",
    "lah",
    "rising-b",
    "rising-f",
    "fock-algebra",
    "fock-reorder",
    "fock-normal",
    "fock-antinormal",
    "bargmann-normal",
    "bargmann-antinormal",
    "infinitesimal",
)

# (max-r, max-n) used when the flags are omitted
IDENTITY_DEFAULTS = {
    "falling": (10, 14),
    "first-kind": (8, 12),
    "lah": (12, 8),
    "rising-b": (8, 12),
    "rising-f": (8, 12),
    "fock-algebra": (1, 12),
    "fock-reorder": (4, 12),
    "fock-normal": (5, 16),
    "fock-antinormal": (5, 16),
    "bargmann-normal": (6, 12),
    "bargmann-antinormal": (6, 12),
    "infinitesimal": (4, 5),
}

FOCK_Q = {QKind.FERMION: (0.3, 0.7, 0.9), QKind.BOSON: (0.5, 1.0, 2.0)}


class UsageError(Exception):
    pass


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact_or_decimal(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfermion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("table", help="emit a coefficient triangle")
    p.add_argument("--triangle", required=True, choices=sorted(TRIANGLE_CHOICES))
    p.add_argument("--rows", required=True, type=_positive_int)
    p.add_argument("--eval-q", type=_rational_arg, metavar="NUM/DEN")
    p.add_argument("--format", default="json", choices=("json", "csv", "md"))

    p = sub.add_parser("bell", help="emit q-fermionic Bell numbers")
    p.add_argument("--rows", required=True, type=_positive_int)
    p.add_argument("--eval-q", type=_rational_arg, metavar="NUM/DEN")
    p.add_argument("--format", default="json", choices=("json", "csv", "md"))

    p = sub.add_parser("verify", help="run an identity check and emit a JSON report")
    p.add_argument("--identity", required=True, choices=IDENTITIES)
    p.add_argument("--max-r", type=_positive_int)
    p.add_argument("--max-n", type=_nonneg_int)
    p.add_argument("--q", type=float)

    p = sub.add_parser("dobinski", help="Dobinski series for the Bell number, or the q-exponential")
    p.add_argument("--q", required=True, type=float)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--r", type=_positive_int)
    target.add_argument("--x", type=float, help="evaluate e_q^(f)(x) instead")
    p.add_argument("--tol", type=float, default=1e-15)
    p.add_argument("--max-terms", type=int, default=1000)

    p = sub.add_parser("moments", help="finite-interval moment of the q-point process")
    p.add_argument("--n", required=True, type=_nonneg_int)
    p.add_argument("--r", required=True, type=_positive_int)
    p.add_argument("--q", required=True, type=_exact_or_decimal)
    p.add_argument("--density", default="uniform", choices=("uniform", "triangular", "tabulated"))
    p.add_argument("--support", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--peak", type=float, help="mode of the triangular density")
    p.add_argument("--table", help="CSV file of E,value rows for the tabulated density")
    p.add_argument("--subinterval", required=True, nargs=2, type=float, metavar=("C", "D"))
    p.add_argument("--quad-tol", type=float, default=1e-10)
    return parser


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cell(poly, q):
    return str(poly) if q is None else format_rational(poly.eval_exact(q))


def _render_rows(kind_label: str, rows, first_index: int, q, fmt: str, symbolic_json) -> str:
    """``rows`` is a list of (r, [poly, ...]); columns start at ``first_index``."""
    if fmt == "json":
        return _dumps(symbolic_json)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "s", "value"])
        for r, polys in rows:
            for i, p in enumerate(polys):
                w.writerow([r, i + first_index, _cell(p, q)])
        return buf.getvalue()
    width = max(len(polys) for _, polys in rows)
    head = ["r"] + [f"s={i + first_index}" for i in range(width)]
    lines = [f"**{kind_label}**" + ("" if q is None else f" at q = {format_rational(q)}"), ""]
    lines.append("| " + " | ".join(head) + " |")
    lines.append("|" + "---|" * len(head))
    for r, polys in rows:
        cells = [_cell(p, q) for p in polys] + [""] * (width - len(polys))
        lines.append("| " + " | ".join([str(r)] + cells) + " |")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> tuple[str, int]:
    kind = TRIANGLE_CHOICES[args.triangle]
    tri = triangles.build_triangle(kind, args.rows)
    first = 0 if kind is triangles.TriangleKind.LAHF else 1
    rows = list(enumerate(tri.rows, start=1))
    if args.eval_q is None:
        doc = tri.to_dict()
    else:
        doc = {
            "kind": kind.value,
            "q": format_rational(args.eval_q),
            "rows": [[format_rational(p.eval_exact(args.eval_q)) for p in row] for row in tri.rows],
        }
    return _render_rows(kind.value, rows, first, args.eval_q, args.format, doc), 0


def cmd_bell(args) -> tuple[str, int]:
    bells = triangles.bell_numbers(args.rows)
    if args.eval_q is None:
        doc = {"kind": "bell_fermion", "rows": [b.to_terms() for b in bells]}
    else:
        doc = {
            "kind": "bell_fermion",
            "q": format_rational(args.eval_q),
            "values": [format_rational(b.eval_exact(args.eval_q)) for b in bells],
        }
    rows = [(r, [b]) for r, b in enumerate(bells, start=1)]
    return _render_rows("bell_fermion", rows, 1, args.eval_q, args.format, doc), 0


def _fock_reps(q: float | None, kinds, dim: int):
    for kind in kinds:
        values = FOCK_Q[kind] if q is None else (q,)
        for qv in values:
            cplx = kind is QKind.FERMION and qv > 1.0
            yield fock.build_rep(kind, qv, dim, complex_amplitudes=cplx)


def _fock_report(identity: str, max_r: int, dim: int, q: float | None) -> dict:
    entries = []
    if identity == "fock-algebra":
        for rep in _fock_reps(q, (QKind.FERMION, QKind.BOSON), dim):
            entries.append(fock.report_entry(identity, rep, 0, fock.algebra_residual(rep)))
    elif identity == "fock-reorder":
        if max_r > dim - 2:
            raise UsageError(f"--max-r must be at most {dim - 2}")
        for rep in _fock_reps(q, (QKind.FERMION, QKind.BOSON), dim):
            for s in range(1, max_r + 1):
                entries.append(fock.report_entry(identity, rep, s, fock.reorder_residual(rep, s)))
    else:
        mode = "normal" if identity == "fock-normal" else "antinormal"
        kinds = (QKind.FERMION,) if mode == "normal" else (QKind.FERMION, QKind.BOSON)
        dim = max(dim, 2 * max_r + 2)
        tri = {
            QKind.FERMION: triangles.build_triangle(
                "stirling2f" if mode == "normal" else "antinormal_fermion", max_r
            ),
            QKind.BOSON: triangles.build_triangle("antinormal_boson", max_r),
        }
        for rep in _fock_reps(q, kinds, dim):
            for r in range(1, max_r + 1):
                res = fock.ordering_residual(rep, r, mode, tri[rep.kind])
                entries.append(fock.report_entry(identity, rep, r, res))
    return {"identity": identity, "entries": entries, "pass": all(e["pass"] for e in entries)}


def cmd_verify(args) -> tuple[str, int]:
    ident = args.identity
    dr, dn = IDENTITY_DEFAULTS[ident]
    max_r = dr if args.max_r is None else args.max_r
    max_n = dn if args.max_n is None else args.max_n
    if ident == "falling":
        doc = triangles.verify_falling_identity(max_r, max_n).to_dict()
    elif ident == "first-kind":
        doc = triangles.verify_first_kind_identity(max_r, max_n).to_dict()
    elif ident == "lah":
        doc = triangles.verify_lah_identity(max_n, max_r).to_dict()
    elif ident in ("rising-b", "rising-f"):
        kind = QKind.BOSON if ident == "rising-b" else QKind.FERMION
        doc = triangles.verify_rising_identity(kind, max_r, max_n).to_dict()
    elif ident.startswith("fock-"):
        doc = _fock_report(ident, max_r, max_n, args.q)
    elif ident.startswith("bargmann-"):
        doc = bargmann.verify_bargmann_ordering(ident.split("-", 1)[1], max_r, max_n).to_dict()
    else:
        q = 0.7 if args.q is None else args.q
        d = pointprocess.BaseDensity.uniform(0.0, 1.0)
        doc = pointprocess.infinitesimal_consistency(max_n, q, d, (0.001, 0.01, 0.1), rmax=max_r)
    return _dumps(doc), 0 if doc["pass"] else 1


def cmd_dobinski(args) -> tuple[str, int]:
    if args.r is not None:
        res = dobinski.bell_dobinski(args.r, args.q, args.tol, args.max_terms)
    else:
        res = dobinski.qexp_f(args.x, args.q, args.tol, args.max_terms)
    return _dumps(res.to_dict()), 0


def _read_table(path: str):
    points = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                points.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                if points:
                    raise UsageError(f"bad row in {path}: {row!r}") from None
                # header line
    return points


def cmd_moments(args) -> tuple[str, int]:
    if args.density == "tabulated":
        if not args.table:
            raise UsageError("--density tabulated needs --table FILE")
        d = pointprocess.BaseDensity.tabulated(_read_table(args.table))
    else:
        if not args.support:
            raise UsageError(f"--density {args.density} needs --support A B")
        lo, hi = args.support
        if args.density == "uniform":
            d = pointprocess.BaseDensity.uniform(lo, hi)
        else:
            d = pointprocess.BaseDensity.triangular(lo, hi, args.peak)
    a, b = args.subinterval
    query = pointprocess.MomentQuery(args.n, args.r, (a, b), args.q)
    p = pointprocess.interval_mass(d, a, b, args.quad_tol)
    pieces, moment = pointprocess.moment_terms(query.n, query.r, float(query.q), p)
    doc = {
        "p": p,
        "moment": float(moment),
        "terms": [{k: (float(v) if k != "s" else v) for k, v in piece.items()} for piece in pieces],
    }
    return _dumps(doc), 0


COMMANDS = {
    "table": cmd_table,
    "bell": cmd_bell,
    "verify": cmd_verify,
    "dobinski": cmd_dobinski,
    "moments": cmd_moments,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.verb](args)
    except RegimeError as exc:
        print(f"qfermion {args.verb}: regime {exc.regime}: {exc}", file=stderr)
        return 2
    except (UsageError, QFermionError, OSError) as exc:
        print(f"qfermion {args.verb}: {exc}", file=stderr)
        return 2
    stdout.write(text)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
