"""Command-line surface: parse matrix documents, classify, decide isomorphy,
generate representatives, run the enumeration oracle, and print reports.

Matrix document format (plain text, reviewable fixtures):

    field: rationals | fp <p> | real
    alpha: <scalar>            (optional; the extension discriminant)
    <2n lines of 2n whitespace-separated scalars>

Scalar syntax: rationals as 'p/q' (q omitted when 1), extension values as
'a+b*w' where w denotes sqrt(alpha), prime-field residues as decimal
integers. Exit codes: 0 success, 1 domain error, 2 parse error. --json
switches every report to the fixed machine format.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .enumeration import (EnumerationError, enumerate_group,
                          enumerate_involutions, partition_classes,
                          verify_counts)
from .field import PRIME, REAL, FieldCtx, format_scalar, square_class
from .involution import (InvolutionError, classify, decide_isomorphic,
                         count_formulas, representative, verify_report)
from .linalg import Mat


class ParseError(ValueError):
    pass


# -- scalar and document parsing ----------------------------------------------


def parse_base_scalar(text, ctx):
    text = text.strip()
    if not text:
        raise ParseError("empty scalar")
    try:
        if "/" in text:
            num, den = text.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r}") from exc
    return ctx.scalar(value)


def _split_terms(text):
    """Split 'a+b*w' style text into signed terms."""
    terms = []
    current = ""
    for ch in text:
        if ch in "+-" and current and current[-1] not in "+-/*e":
            terms.append(current)
            current = ch
        else:
            current += ch
    if current:
        terms.append(current)
    return terms


def parse_scalar(text, ctx):
    """Parse 'a', 'b*w', 'a+b*w', '-w', 'w' into an FVal of ctx."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ParseError("empty scalar")
    a = ctx.zero_s()
    b = ctx.zero_s()
    for term in _split_terms(text):
        if term in ("w", "+w"):
            coeff, is_root = ctx.one_s(), True
        elif term == "-w":
            coeff, is_root = ctx.neg(ctx.one_s()), True
        elif term.endswith("*w"):
            coeff, is_root = parse_base_scalar(term[:-2], ctx), True
        elif term.endswith("w"):
            raise ParseError(f"bad scalar {text!r}")
        else:
            coeff, is_root = parse_base_scalar(term, ctx), False
        if is_root:
            if ctx.ext_disc is None:
                raise ParseError("w used without an alpha: line")
            b = ctx.add(b, coeff)
        else:
            a = ctx.add(a, coeff)
    return ctx.val(a, b)


def parse_field_spec(text):
    parts = text.strip().lower().replace(":", " ").split()
    if parts == ["rationals"]:
        return FieldCtx.rationals()
    if parts == ["real"]:
        return FieldCtx.real()
    if parts and parts[0] == "fp":
        digits = parts[1] if len(parts) > 1 else parts[0][2:]
        try:
            p = int(digits)
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad field {text!r}") from exc
        try:
            return FieldCtx.prime(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if text.strip().lower().startswith("fp") and text.strip()[2:].isdigit():
        return FieldCtx.prime(int(text.strip()[2:]))
    raise ParseError(f"bad field {text!r}")


def parse_matrix_document(text):
    """Parse the document format into a Mat (alpha folded to canonical)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].lower().startswith("field:"):
        raise ParseError("missing 'field:' header")
    base = parse_field_spec(lines[0].split(":", 1)[1])
    rows_start = 1
    ctx = base
    scale = None
    if len(lines) > 1 and lines[1].lower().startswith("alpha:"):
        alpha = parse_base_scalar(lines[1].split(":", 1)[1], base)
        if base.is_zero(alpha):
            raise ParseError("alpha must be nonzero")
        ctx, scale = base.extend(alpha)
        rows_start = 2
    body = lines[rows_start:]
    if not body:
        raise ParseError("missing matrix rows")
    dim = len(body)
    grid = []
    parse_ctx = ctx if ctx.ext_disc is not None else base
    for ln in body:
        entries = ln.split()
        if len(entries) != dim:
            raise ParseError(f"expected {dim} entries per row, got {len(entries)}")
        row = []
        for token in entries:
            if scale is not None and ctx.ext_disc is not None:
                raw = parse_scalar(token, _RawExt(base))
                row.append(parse_ctx.val(raw.a, base.mul(raw.b, scale)))
            elif scale is not None:
                # alpha was a square: fold b*sqrt(alpha) into the base field
                raw = parse_scalar(token, _RawExt(base))
                row.append(base.val(base.add(raw.a, base.mul(raw.b, scale))))
            else:
                row.append(parse_scalar(token, base))
        grid.append(row)
    if dim % 2:
        raise ParseError("matrix size must be even")
    return Mat(parse_ctx, grid)


class _RawExt:
    """Parse-time context that tolerates w before alpha canonicalization."""

    def __init__(self, base):
        self._base = base
        self.ext_disc = 0  # any non-None sentinel: w is allowed
        self.kind = base.kind
        self.p = base.p

    def zero_s(self):
        return self._base.zero_s()

    def one_s(self):
        return self._base.one_s()

    def neg(self, x):
        return self._base.neg(x)

    def add(self, x, y):
        return self._base.add(x, y)

    def scalar(self, x):
        return self._base.scalar(x)

    def val(self, a, b=0):
        return _RawVal(self._base.scalar(a), self._base.scalar(b))


class _RawVal:
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b


def format_matrix_document(m):
    """Inverse of parse_matrix_document on canonical form."""
    ctx = m.ctx
    base = ctx.base()
    if base.kind == PRIME:
        header = f"field: fp {base.p}"
    elif base.kind == REAL:
        header = "field: real"
    else:
        header = "field: rationals"
    lines = [header]
    if ctx.ext_disc is not None:
        lines.append(f"alpha: {ctx.ext_disc}")
    for i in range(m.rows):
        lines.append(" ".join(format_scalar(m[i, j]) for j in range(m.cols)))
    return "\n".join(lines) + "\n"


# -- reports -------------------------------------------------------------------


def _matrix_rows(m):
    return [[format_scalar(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _report_dict(report):
    return {
        "type": int(report.type[1]),
        "n": report.n,
        "gamma": report.gamma,
        "alpha_class": str(report.alpha_class.rep),
        "dim_pair": list(report.dim_pair) if report.dim_pair else None,
        "transition": _matrix_rows(report.transition),
        "verified": True,
    }


def _print_report(report, as_json, out):
    if as_json:
        out.write(json.dumps(_report_dict(report)) + "\n")
        return
    head = f"type={report.type[1]} n={report.n} gamma={report.gamma} " \
           f"alpha={report.alpha_class.rep}"
    if report.dim_pair:
        head += f" dims={{{report.dim_pair[0]},{report.dim_pair[1]}}}"
    if report.case:
        head += f" case={report.case}"
    out.write(head + "\n")
    out.write("transition:\n")
    for row in _matrix_rows(report.transition):
        out.write(" ".join(row) + "\n")
    out.write("verified=true\n")


# -- subcommands -----------------------------------------------------------------


def _cmd_classify(args, out):
    mat = parse_matrix_document(_read(args.file))
    report = classify(mat)
    verify_report(mat, report)
    _print_report(report, args.json, out)
    return 0


def _cmd_canonical(args, out):
    mat = parse_matrix_document(_read(args.file))
    report = classify(mat)
    verify_report(mat, report)
    _print_report(report, args.json, out)
    return 0


def _cmd_isomorphic(args, out):
    mat_a = parse_matrix_document(_read(args.file_a))
    mat_b = parse_matrix_document(_read(args.file_b))
    decision = decide_isomorphic(mat_a, mat_b)
    if args.json:
        payload = {
            "isomorphic": decision.isomorphic,
            "sign": decision.sign,
            "conjugator": _matrix_rows(decision.conjugator) if decision.conjugator else None,
            "verified": decision.isomorphic,
        }
        out.write(json.dumps(payload) + "\n")
        return 0
    out.write(f"isomorphic={'true' if decision.isomorphic else 'false'}\n")
    if decision.isomorphic:
        out.write(f"sign={decision.sign:+d}\n")
        out.write("conjugator:\n")
        for row in _matrix_rows(decision.conjugator):
            out.write(" ".join(row) + "\n")
        out.write("verified=true\n")
    return 0


def _cmd_representative(args, out):
    ctx = parse_field_spec(args.field)
    alpha = parse_base_scalar(args.alpha, ctx) if args.alpha is not None else None
    mat = representative(f"T{args.type}", args.n, ctx, s=args.s, alpha=alpha)
    if args.json:
        payload = {
            "type": args.type,
            "n": args.n,
            "matrix": _matrix_rows(mat),
            "document": format_matrix_document(mat),
        }
        out.write(json.dumps(payload) + "\n")
        return 0
    out.write(format_matrix_document(mat))
    return 0


def _cmd_enumerate(args, out):
    group = enumerate_group(args.n, args.p)
    alpha = None
    if args.alpha is not None:
        alpha = int(args.alpha) % args.p
    invs = enumerate_involutions(args.n, args.p, alpha, group=group)
    table = partition_classes(invs, group, alpha)
    if args.json:
        payload = {
            "order": len(group.elements),
            "involutions": len(invs),
            "classes": {str(t): {"count": table.counts[t].value,
                                 "orbit_sizes": table.class_sizes[t]}
                        for t in (1, 2, 3, 4)},
        }
        out.write(json.dumps(payload) + "\n")
        return 0
    out.write(f"group order: {len(group.elements)}\n")
    out.write(f"involution-inducing matrices: {len(invs)}\n")
    for t in ((1, 3) if alpha is None else (2, 4)):
        sizes = ",".join(str(s) for s in table.class_sizes[t]) or "-"
        out.write(f"C{t} = {table.counts[t].value} (orbit sizes: {sizes})\n")
    return 0


def _cmd_verify_counts(args, out):
    rows = verify_counts(args.n, args.p)
    if args.json:
        payload = [{"name": name, "formula": formula, "enumerated": got,
                    "verdict": verdict} for name, formula, got, verdict in rows]
        out.write(json.dumps(payload) + "\n")
        return 0
    for name, formula, got, verdict in rows:
        out.write(f"{name}: formula [{formula}] enumerated={got} {verdict}\n")
    return 0


def _cmd_square_class(args, out):
    ctx = parse_field_spec(args.field)
    x = parse_base_scalar(args.value, ctx)
    if ctx.is_zero(x):
        raise InvolutionError("not a unit")
    cls = square_class(x, ctx)
    if args.json:
        out.write(json.dumps({"square_class": str(cls.rep)}) + "\n")
        return 0
    out.write(f"{cls.rep}\n")
    return 0


def _cmd_counts(args, out):
    ctx = parse_field_spec(args.field)
    table = count_formulas(args.n, ctx)
    if args.json:
        payload = {str(t): {"value": table.counts[t].value,
                            "exact": table.counts[t].exact} for t in (1, 2, 3, 4)}
        out.write(json.dumps(payload) + "\n")
        return 0
    for t in (1, 2, 3, 4):
        out.write(table.counts[t].render(f"C{t}") + "\n")
    return 0


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sympinv",
        description="Exact classification of involutions of Sp(2n,k).")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the involution in a matrix file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("canonical", help="canonical transition matrix for a file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_canonical)

    p = sub.add_parser("isomorphic", help="decide isomorphy of two involutions")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(fn=_cmd_isomorphic)

    p = sub.add_parser("representative", help="emit a class representative")
    p.add_argument("--type", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--alpha", default=None)
    p.add_argument("--field", default="rationals")
    p.set_defaults(fn=_cmd_representative)

    p = sub.add_parser("enumerate", help="enumerate Sp(2n,p) and its involution classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", default=None)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("verify-counts", help="check count formulas against enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=_cmd_verify_counts)

    p = sub.add_parser("square-class", help="canonical square class of a scalar")
    p.add_argument("--field", required=True)
    p.add_argument("value")
    p.set_defaults(fn=_cmd_square_class)

    p = sub.add_parser("counts", help="closed-form class counts for (n, field)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", required=True)
    p.set_defaults(fn=_cmd_counts)

    return parser


def run(argv=None, out=None):
    """Entry point: exit code 0 on success, 1 on domain errors, 2 on parse errors."""
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (InvolutionError, EnumerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
