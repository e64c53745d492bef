"""Command-line interface: ``quadnets analyze | verify-catalog | roots | quartic``.

Exit codes: 0 success, 1 usage or input error, 2 mathematical degeneracy,
3 incompleteness over the chosen field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .baselocus import BaseLocusNotFinite, IncompleteBaseLocus, MultiplicityBoundExceeded
from .catalog import (
    IncompleteAnalysis,
    analyze_net,
    catalog_summary,
    find_entry,
    load_catalog,
    reports_to_json,
    verify_catalog,
)
from .exact.fields import parse_field
from .parsing import PolynomialSyntaxError
from .quadric import DegenerateNetError, Net, QuadraticForm
from .quartic import (
    BeyondADE,
    IncompleteSingularities,
    NonIsolatedSingularities,
    PlaneQuartic,
    quartic_root_system,
)
from .roots import (
    InfiniteQuotientError,
    affine_extensions,
    finite_index_subsystems_E7,
    format_types,
    parse_types,
    quotient_group,
    subsystem,
)

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_INCOMPLETE = 0, 1, 2, 3
NET_KEYS = ("Q1", "Q2", "Q3")


class NetFileError(ValueError):
    """A net file that does not parse; carries the 1-based line and column."""

    def __init__(self, message, line, column=1):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class NetFile:
    field: object
    forms: tuple  # QuadraticForm, in Q1, Q2, Q3 order
    texts: tuple

    def net(self):
        return Net(list(self.forms), self.field)


def parse_net_file(text: str, field_override=None) -> NetFile:
    """Parse ``key: value`` lines with keys ``field``, ``Q1``, ``Q2``, ``Q3``; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise NetFileError("expected 'key: value'", lineno, col)
        key, _, value = body.partition(":")
        key = key.strip()
        canon = key.upper() if key.upper() in NET_KEYS else key.lower()
        if canon not in NET_KEYS + ("field",):
            raise NetFileError(f"unknown key {key!r}", lineno, len(body) - len(body.lstrip()) + 1)
        if canon in values:
            raise NetFileError(f"duplicate key {key!r}", lineno)
        offset = len(body.partition(":")[0]) + 1
        offset += len(value) - len(value.lstrip())
        values[canon] = (value.strip(), lineno, offset)
    for k in NET_KEYS:
        if k not in values:
            raise NetFileError(f"missing key {k!r}", len(text.splitlines()) + 1)
    if field_override is not None:
        field = field_override
    elif "field" in values:
        ftext, lineno, col = values["field"]
        try:
            field = parse_field(ftext)
        except ValueError as exc:
            raise NetFileError(str(exc), lineno, col + 1) from exc
    else:
        field = parse_field("Q")
    forms = []
    for k in NET_KEYS:
        vtext, lineno, col = values[k]
        try:
            forms.append(QuadraticForm.parse(vtext, field, lineno))
        except PolynomialSyntaxError as exc:
            raise NetFileError(f"{k}: {exc.message}", lineno, col + exc.column) from exc
        except ZeroDivisionError as exc:
            raise NetFileError(f"{k}: {exc}", lineno, col + 1) from exc
    return NetFile(field, tuple(forms), tuple(values[k][0] for k in NET_KEYS))


# ---------------------------------------------------------------------------
# commands


def _err(msg):
    print(msg, file=sys.stderr)


def cmd_analyze(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    try:
        override = parse_field(args.field) if args.field else None
        nf = parse_net_file(text, override)
    except (NetFileError, ValueError) as exc:
        _err(f"{args.path}: {exc}")
        return EXIT_USAGE
    try:
        report = analyze_net(nf.net())
    except (DegenerateNetError, BaseLocusNotFinite, MultiplicityBoundExceeded, NonIsolatedSingularities, BeyondADE) as exc:
        _err(f"degenerate: {exc}")
        return EXIT_DEGENERATE
    except (IncompleteAnalysis, IncompleteBaseLocus, IncompleteSingularities) as exc:
        _err(f"incomplete over {nf.field}: {exc}")
        return EXIT_INCOMPLETE
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
        return EXIT_OK
    print(_analysis_headline(report))
    print(f"field {report['field']}; n={report['n']}; A={report['A']} B={report['B']} C={report['C']} D={report['D']} (h0={report['h0']})")
    for bp in report["basepoints"]:
        idx = bp["indices"]
        span = f"p{idx[0]}" + (f"..p{idx[-1]}" if len(idx) > 1 else "")
        print(f"  basepoint {bp['point']} multiplicity {bp['multiplicity']} ({span})")
    for m in report["rank2_members"]:
        print(f"  rank-2 member {m}")
    if "discriminant" in report:
        print(f"discriminant {report['discriminant']}")
        print(f"singularities {report['root_system']}" + "".join(f"\n  {s}" for s in report["singularities"]))
    return EXIT_OK


def _analysis_headline(r):
    parts = [f"type {r['type']}", f"d={r['d']}", f"rho={r['rho']}", "EXTREMAL" if r["extremal"] else "NOT extremal"]
    if "mw_group" in r:
        parts.append(f"MW={r['mw_group']}")
    return ", ".join(parts)


def cmd_verify_catalog(args) -> int:
    try:
        entries = [find_entry(args.entry)] if args.entry else load_catalog()
    except KeyError as exc:
        _err(f"error: {exc.args[0]}")
        return EXIT_USAGE
    reports = verify_catalog(entries, prime=args.prime, jobs=args.jobs)
    if args.json:
        print(reports_to_json(reports))
    else:
        if args.verbose or len(reports) == 1:
            for r in reports:
                print(r.to_text())
        print(catalog_summary(reports))
    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        path = os.path.join(args.report_dir, "catalog_report.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports) + "\n")
    return EXIT_OK if all(r.green for r in reports) else EXIT_DEGENERATE


def _fmt(types, ascii_only):
    return format_types(types, pretty=not ascii_only)


def cmd_roots(args) -> int:
    try:
        if args.action == "subsystems":
            for s in finite_index_subsystems_E7():
                print(f"{_fmt(s.types, args.ascii):10} quotient {quotient_group(s)}")
            return EXIT_OK
        types = parse_types(args.type)
        if args.action == "extend":
            found = affine_extensions(types)
            print(", ".join(_fmt(t, args.ascii) for t in found) if found else "none")
            return EXIT_OK
        print(quotient_group(subsystem(types)))
        return EXIT_OK
    except InfiniteQuotientError as exc:
        _err(f"error: {exc}")
        return EXIT_DEGENERATE
    except (ValueError, KeyError) as exc:
        _err(f"error: {exc.args[0] if exc.args else exc}")
        return EXIT_USAGE


def cmd_quartic(args) -> int:
    source = args.quartic
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            lines = [ln.split("#", 1)[0].strip() for ln in fh]
        source = " ".join(ln.partition(":")[2].strip() if ":" in ln else ln for ln in lines if ln)
    try:
        field = parse_field(args.field)
        q = PlaneQuartic.parse(source, field)
    except (PolynomialSyntaxError, ValueError, ZeroDivisionError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    try:
        rs = quartic_root_system(q)
    except (NonIsolatedSingularities, BeyondADE) as exc:
        _err(f"degenerate: {exc}")
        return EXIT_DEGENERATE
    except IncompleteSingularities as exc:
        _err(f"incomplete over {field}: {exc}")
        return EXIT_INCOMPLETE
    if args.json:
        out = {
            "quartic": str(q),
            "field": str(field),
            "root_system": str(rs),
            "rank": rs.rank,
            "singularities": [
                {"point": str(r.point), "type": str(r.tag), "milnor": r.milnor, "corank": r.corank} for r in rs.records
            ],
        }
        print(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False))
        return EXIT_OK
    print(f"{str(rs).replace('+', ' + ')}, rank {rs.rank}")
    for r in rs.records:
        print(f"  {r.tag} at {r.point} (milnor {r.milnor})")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="quadnets", description="Nets of quadrics in P^3 and their elliptic fibrations.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze a net given in a net file")
    a.add_argument("path")
    a.add_argument("--field", help="override the file's field (Q or GF(p))")
    a.add_argument("--json", action="store_true", help="emit the structured report")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-catalog", help="verify the built-in extremal nets")
    v.add_argument("--entry", help="a single entry, e.g. '{8}2'")
    v.add_argument("--prime", type=int, help="re-verify over GF(p)")
    v.add_argument("--jobs", type=int, default=1, help="verify entries in parallel")
    v.add_argument("--json", action="store_true")
    v.add_argument("--verbose", "-v", action="store_true", help="print every check")
    v.add_argument("--report-dir", help="also write catalog_report.json into this directory")
    v.set_defaults(func=cmd_verify_catalog)

    r = sub.add_parser("roots", help="root subsystems of E7 and affine extensions")
    r.add_argument("--ascii", action="store_true", help="write ~A7 instead of a combining tilde")
    rs = r.add_subparsers(dest="action", required=True)
    rs.add_parser("subsystems", help="finite-index root subsystems of E7")
    for name, help_ in (("extend", "affine diagrams obtained by adding one node per component"),
                        ("quotient", "E7 lattice modulo the subsystem")):
        sp = rs.add_parser(name, help=help_)
        sp.add_argument("type", help="e.g. A7, D6+A1, 2A3+A1")
    r.set_defaults(func=cmd_roots)

    q = sub.add_parser("quartic", help="ADE singularities of a plane quartic in a, b, c")
    q.add_argument("quartic", help="a file or an inline polynomial such as 'a*b*c*(a+b)'")
    q.add_argument("--field", default="Q")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_quartic)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
