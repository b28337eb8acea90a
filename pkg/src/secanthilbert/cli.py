"""Command-line interface.

Exit codes: 0 success, 1 bad input, 2 positivity warning under ``--strict``,
3 failed verification, 4 partial batch failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from .batch import (
    ResultCache,
    ResultEnvelope,
    TOOL_VERSION,
    degree_payload,
    parse_ell_range,
    parse_manifest,
    poly_payload,
    run_batch,
    table_payload,
)
from .eulerdata import Curve, Positivity, ProductProj, VarietySpec
from .exactring import ConsistencyError, InputError, format_rational
from .secantpoly import report, secant_nodes
from .verify import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_STRICT, EXIT_VERIFY, EXIT_PARTIAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _variety_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("variety")
    g.add_argument("--space", choices=["curve", "pps"], required=True)
    g.add_argument("--genus", type=int, help="curve genus")
    g.add_argument("--degree", type=int, help="curve degree")
    g.add_argument("--dims", type=_int_list, help="factor dimensions, e.g. 1,1")
    g.add_argument("--degrees", type=_int_list, help="line bundle multidegree, e.g. 4,4")
    p.add_argument("--strict", action="store_true", help="treat a positivity warning as an error")


def _variety(args) -> VarietySpec:
    if args.space == "curve":
        if args.genus is None or args.degree is None:
            raise InputError("--space curve needs --genus and --degree")
        return Curve(args.genus, args.degree)
    if not args.dims or not args.degrees:
        raise InputError("--space pps needs --dims and --degrees")
    return ProductProj.of(args.dims, args.degrees)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="secanthilbert", description="Hilbert polynomials of secant varieties.")
    parser.add_argument("--version", action="version", version=TOOL_VERSION)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("poly", help="Hilbert polynomial of a secant variety")
    _variety_args(p)
    p.add_argument("--secant", type=int, choices=[1, 2], required=True)
    p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("degree", help="dimension and degree of the secant varieties")
    _variety_args(p)
    p.add_argument("--secant", type=int, choices=[1, 2], help="default: both")
    p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("nodes", help="raw interpolation nodes (l, P(l))")
    _variety_args(p)
    p.add_argument("--secant", type=int, choices=[1, 2], required=True)

    p = sub.add_parser("table", help="cohomology dimensions of S^l E_k as CSV")
    _variety_args(p)
    p.add_argument("--k", type=int, choices=[2, 3], required=True)
    p.add_argument("--ell", required=True, help="twist range A..B (A >= 1)")

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="default")
    p.add_argument("--cache", default=os.environ.get("SECANT_CACHE"), help="also recheck every cached result")

    p = sub.add_parser("batch", help="run a manifest")
    p.add_argument("manifest", type=Path)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--cache", default=os.environ.get("SECANT_CACHE"))
    p.add_argument("--threads", type=int, default=1)
    return parser


def _warn(pos: Positivity, strict: bool) -> int:
    if pos.ok:
        return EXIT_OK
    print(f"warning: {pos.message}", file=sys.stderr)
    return EXIT_STRICT if strict else EXIT_OK


def cmd_poly(args, out) -> int:
    V = _variety(args)
    rep = report(V, args.secant)
    if _warn(rep.positivity, args.strict):
        return EXIT_STRICT
    if args.format == "text":
        line = f"dim {rep.dimension}, degree {format_rational(rep.degree).removesuffix('/1')}, P(ℓ) = {rep.polynomial.to_text()}"
        if rep.notes:
            line += f"  [{', '.join(rep.notes)}]"
        print(line, file=out)
        return EXIT_OK
    payload, pos = poly_payload(V, args.secant)
    env = ResultEnvelope(TOOL_VERSION, V.to_dict(), f"poly{args.secant}", payload, pos.to_json())
    out.write(env.to_json())
    return EXIT_OK


def cmd_degree(args, out) -> int:
    V = _variety(args)
    secants = (args.secant,) if args.secant else (1, 2)
    payload, pos = degree_payload(V, secants)
    if _warn(pos, args.strict):
        return EXIT_STRICT
    if args.format == "json":
        out.write(ResultEnvelope(TOOL_VERSION, V.to_dict(), "degree", payload, pos.to_json()).to_json())
    else:
        for entry in payload["degrees"]:
            print(f"Sigma_{entry['secant']}: dim {entry['dimension']}, degree {entry['degree'].removesuffix('/1')}", file=out)
    return EXIT_OK


def cmd_nodes(args, out) -> int:
    V = _variety(args)
    rc = _warn(report(V, args.secant).positivity, args.strict)
    if rc:
        return rc
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["ell", "value"])
    for x, v in secant_nodes(V, args.secant):
        writer.writerow([x, format_rational(v)])
    return EXIT_OK


def cmd_table(args, out) -> int:
    V = _variety(args)
    lo, hi = parse_ell_range(args.ell)
    payload, pos = table_payload(V, args.k, range(lo, hi + 1))
    rc = _warn(pos, args.strict)
    if rc:
        return rc
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(payload["header"])
    writer.writerows(payload["rows"])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = run_suite(args.suite, args.cache)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.name} ({r.checked} checks)"
        if r.detail:
            line += f": {r.detail}"
        print(line, file=out)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_batch(args, out) -> int:
    try:
        text = args.manifest.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read manifest: {exc}") from exc
    manifest = parse_manifest(text)
    cache = ResultCache(args.cache) if args.cache else None
    result = run_batch(manifest, args.out, cache=cache, threads=max(1, args.threads))
    for s in result.statuses:
        print(f"line {s.entry_line} {s.computation}: {s.status}" + (f" -> {s.filename}" if s.filename else ""), file=out)
    return EXIT_PARTIAL if result.failed else EXIT_OK


COMMANDS = {
    "poly": cmd_poly,
    "degree": cmd_degree,
    "nodes": cmd_nodes,
    "table": cmd_table,
    "verify": cmd_verify,
    "batch": cmd_batch,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
