"""Command-line surface: reproduce the count table, build and export cell
decompositions, run the invariant battery, and scan face statistics.

Exit codes: 0 success, 1 validation/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import builders, report
from .cellcomplex import validate
from .counting import CountRow, Family, count_row
from .verify import run_verify

_TABLE_MAX_P = 15  # last period of the pinned reference table


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# table


def _table_csv(rows: list[CountRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(CountRow.COLUMNS) + ["extended"])
    for row in rows:
        writer.writerow(list(row.as_tuple()) + [int(row.p > _TABLE_MAX_P)])
    return buf.getvalue()


def _table_text(rows: list[CountRow]) -> str:
    header = list(CountRow.COLUMNS)
    widths = [max(len(h), 6) for h in header]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    extended = False
    for row in rows:
        cells = [str(v).rjust(w) for v, w in zip(row.as_tuple(), widths)]
        mark = " *" if row.p > _TABLE_MAX_P else ""
        extended = extended or bool(mark)
        lines.append("  ".join(cells) + mark)
    if extended:
        lines.append("(* beyond the tabulated reference range)")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    lo, hi = args.range if args.range else (2, _TABLE_MAX_P)
    if lo < 2:
        raise ValueError("table rows start at p = 2")
    rows = [count_row(p) for p in range(lo, hi + 1)]
    fmt = args.format or "csv"
    if fmt == "csv":
        text = _table_csv(rows)
    elif fmt == "json":
        payload = [
            dict(zip(CountRow.COLUMNS, row.as_tuple()), extended=row.p > _TABLE_MAX_P)
            for row in rows
        ]
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "text":
        text = _table_text(rows)
    else:
        raise ValueError(f"table does not support format {fmt!r}")
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# build


def _build_complex(family: Family, p: int, algorithm: str):
    if algorithm == "bar":
        if family is not Family.PER1:
            raise ValueError("the bar method applies to per1 only")
        return builders.bar_per1(p)
    return (builders.telephone_per1 if family is Family.PER1 else builders.telephone_per2)(p)


def _build_text(cx) -> str:
    lines = [f"family={cx.family.tag} period={cx.period}"]
    stats = cx.stats()
    lines.append(
        "V={V} E={E} F={F} euler={euler} components={components} "
        "genus_formula={genus_formula} genus_per_component={genus_per_component}".format(**stats)
    )
    for f in cx.faces:
        word = " ".join(f"{cx.edges[e].label}{d}" for e, d in f.boundary)
        lines.append(f"face {f.id} {f.cls} degree={f.local_degree}: {word}")
    return "\n".join(lines) + "\n"


def cmd_build(args) -> int:
    family = Family.from_tag(args.family)
    cx = _build_complex(family, args.period, args.algorithm)
    problems = validate(cx).problems
    if problems:
        sys.stderr.write("\n".join(problems) + "\n")
        return 1
    fmt = args.format or "json"
    if fmt == "json":
        text = cx.to_json()
    elif fmt == "dot":
        text = cx.to_dot()
    elif fmt == "text":
        text = _build_text(cx)
    else:
        raise ValueError(f"build does not support format {fmt!r}")
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    lo, hi = args.range if args.range else (3, 12)
    families = (
        (Family.PER1, Family.PER2)
        if args.family == "both"
        else (Family.from_tag(args.family),)
    )
    results = run_verify(lo, hi, families)
    fmt = args.format or "text"
    if fmt == "text":
        text = "".join(r.line() + "\n" for r in results)
        n_fail = sum(1 for r in results if not r.ok)
        text += f"{len(results) - n_fail}/{len(results)} checks passed\n"
    elif fmt == "json":
        text = (
            json.dumps(
                [
                    {
                        "check": r.check,
                        "family": r.family,
                        "period": r.period,
                        "ok": r.ok,
                        "detail": r.detail,
                    }
                    for r in results
                ],
                sort_keys=True,
                indent=2,
            )
            + "\n"
        )
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check", "family", "period", "ok", "detail"])
        for r in results:
            writer.writerow([r.check, r.family, r.period, int(r.ok), r.detail])
        text = buf.getvalue()
    else:
        raise ValueError(f"verify does not support format {fmt!r}")
    _emit(text, args.out)
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# scan


def cmd_scan(args) -> int:
    lo, hi = args.range if args.range else (3, 12)
    if hi > 16:
        raise ValueError("scan supports periods up to 16")
    families = (
        (Family.PER1, Family.PER2)
        if args.family == "both"
        else (Family.from_tag(args.family),)
    )
    rows = []
    for p in range(max(lo, 3), hi + 1):
        for family in families:
            rows.append(report.scan_row(family, p))
    fmt = args.format or "text"
    if fmt == "text":
        lines = []
        for r in rows:
            pairs = " ".join(f"{k}={getattr(r, k)}" for k in r.FIELDS[2:])
            lines.append(f"{r.family} p={r.p}: {pairs}")
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = json.dumps([r.as_dict() for r in rows], sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.ScanRow.FIELDS)
        for r in rows:
            writer.writerow([getattr(r, k) for k in report.ScanRow.FIELDS])
        text = buf.getvalue()
    else:
        raise ValueError(f"scan does not support format {fmt!r}")
    _emit(text, args.out)
    if args.figures:
        for path in report.render_figures(rows, args.figures):
            sys.stderr.write(f"wrote {path}\n")
    return 0


# ---------------------------------------------------------------------------
# entry point


def _add_common(sub, *, period=False, algorithm=False, figures=False, family_both=True):
    if family_both:
        sub.add_argument("--family", default="both", choices=["per1", "per2", "both"])
    else:
        sub.add_argument("--family", default="per1", choices=["per1", "per2"])
    if period:
        sub.add_argument("--period", type=int, required=True, metavar="N")
    else:
        sub.add_argument("--range", type=_parse_range, metavar="A..B")
    if algorithm:
        sub.add_argument("--algorithm", default="telephone", choices=["telephone", "bar"])
    sub.add_argument("--format", choices=["json", "dot", "csv", "text"])
    sub.add_argument("--out", metavar="PATH")
    if figures:
        sub.add_argument("--figures", metavar="DIR", help="render PNG figures into DIR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcc",
        description="build, count and inspect cell decompositions of marked cycle curves",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    table = subs.add_parser("table", help="emit the cell-count table")
    table.add_argument("--range", type=_parse_range, metavar="A..B")
    table.add_argument("--format", choices=["csv", "json", "text"])
    table.add_argument("--out", metavar="PATH")
    table.set_defaults(func=cmd_table)

    build = subs.add_parser("build", help="construct and export one decomposition")
    _add_common(build, period=True, algorithm=True, family_both=False)
    build.set_defaults(func=cmd_build)

    ver = subs.add_parser("verify", help="run the invariant battery over a range")
    _add_common(ver)
    ver.set_defaults(func=cmd_verify)

    scan = subs.add_parser("scan", help="face statistics and conjecture scan")
    _add_common(scan, figures=True)
    scan.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, builders.BuildError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2 if isinstance(exc, ValueError) else 1


if __name__ == "__main__":
    sys.exit(main())
