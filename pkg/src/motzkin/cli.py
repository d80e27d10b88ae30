"""``motzkin`` command line.

Exit status: 0 on success, 2 for bad arguments, 3 when a size guard refuses
a request that would take too long (``--force`` overrides the guard).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import isqrt

from . import cells, combinatorics as comb, stickel
from ._backend import BACKEND
from .diagram import DiagramError
from .linalg import FieldSpec, Matrix01, rank

MAX_ENUM_N = 8
MAX_RANK_DIM = 6000
MAX_CONNECTED_N = 6


class SizeGuard(Exception):
    pass


class UsageError(Exception):
    pass


def _guard(args, ok: bool, what: str):
    if not ok and not args.force:
        raise SizeGuard(f"{what}; pass --force to run anyway")


def _jsonable(x):
    # exact integers travel as decimal strings
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


class Table:
    """Rows with named columns, rendered as csv, json or aligned text."""

    def __init__(self, columns, rows=(), title=None):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        self.title = title

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(self.rows)
            return buf.getvalue()
        if fmt == "json":
            recs = [dict(zip(self.columns, r)) for r in self.rows]
            return json.dumps(_jsonable(recs), indent=2) + "\n"
        cells_ = [[str(c) for c in self.columns]] + [[_fmt(v) for v in r] for r in self.rows]
        widths = [max(len(r[i]) for r in cells_) for i in range(len(self.columns))]
        lines = [self.title] if self.title else []
        for r in cells_:
            lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fields(text: str) -> list[FieldSpec]:
    return [_field(t) for t in text.split(",") if t.strip()]


def _range(text: str) -> list[int]:
    """``a:b[:step]`` (inclusive) or a comma list."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            a, b, s = parts
            if s <= 0:
                raise ValueError
            return list(range(a, b + 1, s))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use a:b[:step] or a,b,c") from None


def _check_nk(n, k=None):
    if n < 0:
        raise UsageError("n must be non-negative")
    if k is not None and not 0 <= k <= n:
        raise UsageError(f"need 0 <= k <= n, got n={n}, k={k}")


# commands --------------------------------------------------------------

def cmd_count(args) -> str:
    n = args.n
    _check_nk(n)
    rows = []
    for k in range(n, -1, -1):
        size = comb.lcell_size(n, k)
        rows.append([n, k, size, size * size])
    total = comb.motzkin_number(2 * n)
    if args.format == "json":
        return json.dumps(_jsonable({"n": n, "size": total,
                                     "cells": [dict(zip(["n", "k", "lcell", "jcell"], r)) for r in rows]}),
                          indent=2) + "\n"
    t = Table(["n", "k", "lcell", "jcell"], rows, title=f"|Mo_{n}| = {total}")
    if args.format == "csv":
        return t.render("csv")
    return t.render("pretty")


def cmd_cells(args) -> str:
    n = args.n
    _check_nk(n)
    _guard(args, n <= MAX_ENUM_N, f"enumerating Mo_{n} is refused above n={MAX_ENUM_N}")
    dec = cells.decompose(n)
    blocks = []
    for k in range(n, -1, -1):
        g = cells.gram_matrix(n, k)
        blocks.append((k, g))
    if args.format == "json":
        out = {"n": n, "cells": [{"k": k, "order": [h.code for h in g.rows],
                                  "idempotents": int(sum(b.bit_count() for b in g.matrix.bits)),
                                  "rows": g.matrix.row_strings()} for k, g in blocks]}
        return json.dumps(_jsonable(out), indent=2) + "\n"
    if args.format == "csv":
        rows = [[n, k, t.code, b.code, g.matrix[i, j]]
                for k, g in blocks for i, t in enumerate(g.rows) for j, b in enumerate(g.cols)]
        return Table(["n", "k", "top", "bottom", "idempotent"], rows).render("csv")
    lines = [f"Mo_{n}: rows are top halves, columns bottom halves, * marks an idempotent"]
    for k, g in blocks:
        lines.append("")
        lines.append(f"J_{k}  ({dec.size(k)} x {dec.size(k)}, {sum(b.bit_count() for b in g.matrix.bits)} idempotents)")
        width = max(n, 1)
        lines.append(" " * width + " " + " ".join(h.code.ljust(width) for h in g.cols))
        for i, t in enumerate(g.rows):
            marks = " ".join(("*" if g.matrix[i, j] else ".").ljust(width) for j in range(len(g.cols)))
            lines.append(f"{t.code.ljust(width)} {marks}".rstrip())
    return "\n".join(lines) + "\n"


def _matrix_report(args, g: cells.GramMatrix, field: FieldSpec, label: str) -> str:
    nr, nc = g.shape
    _guard(args, not field.is_rational or max(nr, nc) <= MAX_RANK_DIM,
           f"rank over Q is refused above dimension {MAX_RANK_DIM} (got {max(nr, nc)})")
    r = g.rank(field)
    if args.matrix:
        return g.matrix.to_text()
    if args.format == "json":
        d = g.to_dict()
        d.update({"field": str(field), "rank": r})
        return json.dumps(_jsonable(d), indent=2) + "\n"
    if args.format == "csv":
        rows = [[t.code] + [g.matrix[i, j] for j in range(nc)] for i, t in enumerate(g.rows)]
        return Table(["top"] + [b.code for b in g.cols], rows).render("csv")
    lines = [f"{label} n={g.n} k={g.k} ({nr}x{nc})"]
    for t, s in zip(g.rows, g.matrix.row_strings()):
        lines.append(f"{t.code}  {s}")
    lines.append(f"rank {r} over {field}")
    return "\n".join(lines) + "\n"


def cmd_gram(args) -> str:
    _check_nk(args.n, args.k)
    _guard(args, args.n <= MAX_ENUM_N, f"enumerating Mo_{args.n} is refused above n={MAX_ENUM_N}")
    return _matrix_report(args, cells.gram_matrix(args.n, args.k), _field(args.field), "Gram matrix")


def cmd_submatrix(args) -> str:
    _check_nk(args.n, args.k)
    _guard(args, args.n <= MAX_ENUM_N, f"enumerating Mo_{args.n} is refused above n={MAX_ENUM_N}")
    return _matrix_report(args, cells.consecutive_submatrix(args.n, args.k), _field(args.field),
                          "Consecutive submatrix")


def cmd_table(args) -> str:
    fields = _fields(args.fields)
    if not fields:
        raise UsageError("need at least one field")
    if args.n_max < 0:
        raise UsageError("n_max must be non-negative")
    _guard(args, args.n_max <= MAX_ENUM_N, f"enumerating Mo_{args.n_max} is refused above n={MAX_ENUM_N}")
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for r in cells.apex_table(n, fields):
            rows.append([r.n, r.k, r.ssdim] + [v for _, v in r.ranks])
    return Table(["n", "k", "ssdim"] + [f"rank_{f}" for f in fields], rows).render(args.format)


def cmd_curve(args) -> str:
    which = args.which
    if which in ("ssdim-vs-k", "summand-vs-t"):
        n = args.n
        if n is None:
            raise UsageError(f"{which} needs --n")
        _check_nk(n)
        if which == "ssdim-vs-k":
            t = Table(["k", "ssdim"], comb.ssdim_curve(n))
        else:
            if n < 1:
                raise UsageError("summand-vs-t needs n >= 1")
            t = Table(["t", "summand"], comb.summand_curve(n, (n - isqrt(n)) // 2))
        return t.render(args.format)
    ns = _range(args.range)
    if any(n < 1 for n in ns):
        raise UsageError("curve ranges need n >= 1")
    if which == "peak-vs-n":
        t = Table(["n", "peak_t", "n_over_3"], comb.peak_curve(ns))
    elif which == "nthroot":
        limit = dict(comb.limit_curve(ns))
        t = Table(["n", "nth_root", "limit_curve"], [(n, v, limit[n]) for n, v in comb.nth_root_curve(ns)])
    else:
        t = Table(["n", "ssgapr", "gapr_root", "faithr"],
                  [(p.n, p.ssgapr, p.gapr_root, p.faithr) for p in comb.ratio_curves(ns)])
    return t.render(args.format)


def cmd_connected(args) -> str:
    n = args.n
    _check_nk(n)
    _guard(args, n <= MAX_CONNECTED_N, f"connectedness is refused above n={MAX_CONNECTED_N}")
    r = cells.connectedness(n)
    rows = [[n, r.size, len(r.units), r.null_connected, r.left_connected, r.right_connected,
             r.well_connected, r.degenerate]]
    return Table(["n", "size", "units", "null", "left", "right", "well", "degenerate"], rows).render(args.format)


def cmd_stickel(args) -> str:
    n = args.n
    if n < 2:
        raise UsageError("the exchange needs n >= 2")
    params = stickel.default_params(n, args.seed, args.bound)
    doc = stickel.transcript(params, args.seed)
    doc["transcript_sha256"] = stickel.transcript_hash(params, args.seed)
    if args.trials:
        doc["statistics"] = stickel.key_statistics(params, args.trials, args.seed)
    if args.format == "csv":
        flat = {k: v for k, v in doc.items() if k != "statistics"}
        flat.update(doc.get("statistics", {}))
        return Table(list(flat), [list(flat.values())]).render("csv")
    if args.format == "json":
        return json.dumps(_jsonable(doc), indent=2) + "\n"
    lines = [f"{k}: {v}" for k, v in doc.items() if k != "statistics"]
    for k, v in doc.get("statistics", {}).items():
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def cmd_rank(args) -> str:
    try:
        with open(args.file) as fh:
            m = Matrix01.from_text(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    field = _field(args.field)
    _guard(args, not field.is_rational or max(m.shape) <= MAX_RANK_DIM,
           f"rank over Q is refused above dimension {MAX_RANK_DIM}")
    r = rank(m, field)
    if args.format == "json":
        return json.dumps(_jsonable({"rows": m.nrows, "cols": m.ncols, "field": str(field), "rank": r})) + "\n"
    if args.format == "csv":
        return Table(["rows", "cols", "field", "rank"], [[m.nrows, m.ncols, field, r]]).render("csv")
    return f"rank {r} over {field}\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--force", action="store_true", help="override size guards")

    p = argparse.ArgumentParser(prog="motzkin", description="Exact computations in the Motzkin monoid.")
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", parents=[common], help="monoid and cell sizes")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("cells", parents=[common], help="cell grid with idempotents marked")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_cells)

    for name, func, helptext in (("gram", cmd_gram, "Gram matrix of a J-cell and its rank"),
                                 ("submatrix", cmd_submatrix, "full-rank consecutive-strand submatrix")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("n", type=int)
        s.add_argument("k", type=int)
        s.add_argument("--field", default="Q")
        s.add_argument("--matrix", action="store_true", help="emit the matrix text format only")
        s.set_defaults(func=func)

    s = sub.add_parser("table", parents=[common], help="sizes and ranks of every J-cell up to n_max")
    s.add_argument("n_max", type=int)
    s.add_argument("--n-min", type=int, default=0)
    s.add_argument("--fields", default="Q,GF2")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("curve", parents=[common], help="data behind the growth curves")
    s.add_argument("which", choices=("ssdim-vs-k", "summand-vs-t", "peak-vs-n", "nthroot", "ratios"))
    s.add_argument("--n", type=int)
    s.add_argument("--range", default="100,200,500,1000,2000,5000")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("connected", parents=[common], help="null/left/right connectedness by brute force")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_connected)

    s = sub.add_parser("stickel", parents=[common], help="run the toy key exchange")
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=0)
    s.add_argument("--bound", type=int, default=stickel.DEFAULT_BOUND)
    s.set_defaults(func=cmd_stickel)

    s = sub.add_parser("rank", parents=[common], help="rank of a matrix in the text format")
    s.add_argument("file")
    s.add_argument("--field", default="Q")
    s.set_defaults(func=cmd_rank)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except SizeGuard as exc:
        print(f"motzkin: {exc}", file=sys.stderr)
        return 3
    except (UsageError, DiagramError, ValueError) as exc:
        print(f"motzkin: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
