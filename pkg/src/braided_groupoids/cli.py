"""Command line interface: ``braided-groupoids <subcommand> ...``.

Exit codes: 0 success or braided, 2 invalid input, 3 not braided,
4 not applicable, 5 the verification routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .constructors import (
    build_handy_group,
    build_nonhandy,
    check_braided_group,
    detect_handy,
    reconstruct_handy,
)
from .errors import (
    BraidedGroupoidError,
    NotBraided,
    NotBraidedGroup,
    NotHandy,
    PhiMissing,
    RouteDisagreement,
)
from .groups import catalog
from .search import JOBS_ENV, SearchSpec, braiding_table_lines, default_jobs, run_census_to_file
from .verify import BRAIDED, NOT_APPLICABLE, ROUTES, verify

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_BRAIDED = 3
EXIT_NOT_APPLICABLE = 4
EXIT_DISAGREEMENT = 5


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braided-groupoids", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "table"), default="table")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="decide whether a datum is braided")
    s.add_argument("--datum", required=True, type=Path)
    s.add_argument("--routes", nargs="+", choices=ROUTES, default=list(ROUTES))

    s = sub.add_parser("build-handy", help="build a datum from handy input")
    s.add_argument("--input", required=True, type=Path)
    s.add_argument("--out", required=True, type=Path)

    s = sub.add_parser("build-nonhandy", help="build a datum from psi-twisted input")
    s.add_argument("--input", required=True, type=Path)
    s.add_argument("--out", required=True, type=Path)

    s = sub.add_parser("reconstruct", help="recover handy input from a braided handy datum")
    s.add_argument("--datum", required=True, type=Path)
    s.add_argument("--out", required=True, type=Path)

    s = sub.add_parser("braiding-table", help="export the braiding as JSON lines")
    s.add_argument("--datum", required=True, type=Path)
    s.add_argument("--out", required=True, type=Path)

    s = sub.add_parser("census", help="enumerate braided data over groups")
    s.add_argument("--groups", nargs="+", required=True, help="catalog references such as D4 or C2xS3")
    s.add_argument("--out", required=True, type=Path)
    s.add_argument("--max-order", type=int, default=128)
    s.add_argument("--min-objects", type=int, default=1)
    kind = s.add_mutually_exclusive_group()
    kind.add_argument("--require-handy", action="store_true")
    kind.add_argument("--require-nonhandy", action="store_true")
    s.add_argument("--no-prune", action="store_true", help="try every section and isomorphism")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--max-units", type=int, default=None, help="stop after this many work units")
    s.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")

    s = sub.add_parser("check-group", help="validate a group table or catalog reference")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="catalog reference, e.g. S3 or C2xC2")
    src.add_argument("--file", type=Path, help="JSON group document")
    src.add_argument("--family", nargs=2, metavar=("NAME", "PARAM"))
    s.add_argument("--tri-left", type=Path, help="JSON table for a braided group check")
    s.add_argument("--tri-right", type=Path)
    return p


def _check_paths(args) -> None:
    inputs = [getattr(args, k) for k in ("datum", "input", "file", "tri_left", "tri_right") if getattr(args, k, None)]
    for path in inputs:
        if not path.is_file():
            raise UsageError(f"input file {path} does not exist")
    out = getattr(args, "out", None)
    if out is not None:
        if not out.parent.exists():
            raise UsageError(f"output directory {out.parent} does not exist")
        if any(out.resolve() == p.resolve() for p in inputs):
            raise UsageError("output would overwrite an input file")


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(io.dumps(doc))
    else:
        for line in lines:
            print(line)


def _report_lines(report) -> list[str]:
    lines = [f"verdict: {report.verdict}"]
    for r in report.routes.values():
        lines.append(f"  {r.name:<11} {'ok' if r.ok else 'FAIL'}  {r.seconds:.3f}s")
        failures = r.details.get("violations") or ({"": r.counterexample} if r.counterexample else {})
        for ce in failures.values():
            lines.append(f"    counterexample: {json.dumps(ce, sort_keys=True)}")
    return lines


def _verdict_code(verdict: str) -> int:
    if verdict == BRAIDED:
        return EXIT_OK
    if verdict == NOT_APPLICABLE:
        return EXIT_NOT_APPLICABLE
    return EXIT_NOT_BRAIDED


def cmd_verify(args) -> int:
    datum = io.datum_from_json(io.read(args.datum))
    report = verify(datum, routes=tuple(args.routes))
    doc = report.to_dict()
    _emit(args, doc, _report_lines(report))
    return _verdict_code(report.verdict)


def _build(args, loader, builder) -> int:
    inp = loader(io.read(args.input))
    datum = builder(inp)
    report = verify(datum)
    io.write(args.out, io.datum_to_json(datum))
    handy = detect_handy(datum).handy
    doc = {"order": datum.D.order, "objects": datum.n_objects, "handy": handy, "report": report.to_dict()}
    _emit(args, doc, [f"wrote {args.out}: |D| = {datum.D.order}, #objects = {datum.n_objects}, handy = {handy}"]
          + _report_lines(report))
    return _verdict_code(report.verdict)


def cmd_build_handy(args) -> int:
    return _build(args, io.handy_input_from_json, build_handy_group)


def cmd_build_nonhandy(args) -> int:
    return _build(args, io.nonhandy_input_from_json, build_nonhandy)


def cmd_reconstruct(args) -> int:
    datum = io.datum_from_json(io.read(args.datum))
    inp = reconstruct_handy(datum)
    io.write(args.out, io.handy_input_to_json(inp))
    _emit(args, {"out": str(args.out), "objects": inp.n_objects, "order_F": inp.F.order},
          [f"wrote {args.out}: |F| = {inp.F.order}, #objects = {inp.n_objects}"])
    return EXIT_OK


def cmd_braiding_table(args) -> int:
    datum = io.datum_from_json(io.read(args.datum))
    report = verify(datum, routes=("c1c2c3",))
    if report.verdict != BRAIDED:
        _emit(args, report.to_dict(), _report_lines(report))
        return _verdict_code(report.verdict)
    count = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for line in braiding_table_lines(datum):
            fh.write(line)
            count += 1
    _emit(args, {"out": str(args.out), "pairs": count}, [f"wrote {count} composable pairs to {args.out}"])
    return EXIT_OK


def cmd_census(args) -> int:
    spec = SearchSpec(
        groups=args.groups,
        max_order=args.max_order,
        require_handy=args.require_handy,
        require_nonhandy=args.require_nonhandy,
        min_objects=args.min_objects,
        prune=not args.no_prune,
    )
    jobs = default_jobs() if args.jobs is None else args.jobs
    units = run_census_to_file(spec, args.out, resume=args.resume, jobs=jobs, max_units=args.max_units)
    with open(args.out, encoding="utf-8") as fh:
        records = sum(1 for line in fh if line.strip())
    _emit(args, {"out": str(args.out), "units": units, "records": records},
          [f"{units} work units done, {records} records in {args.out}"])
    return EXIT_OK


def cmd_check_group(args) -> int:
    if args.group:
        G = io.group_from_json({"ref": args.group})
    elif args.family:
        G = catalog(args.family[0], int(args.family[1]))
    else:
        G = io.group_from_json(io.read(args.file))
    doc = {
        "label": G.label,
        "order": G.order,
        "abelian": G.is_abelian(),
        "center": list(G.center),
        "element_orders": {str(k): v for k, v in G.order_histogram().items()},
    }
    code = EXIT_OK
    if args.tri_left or args.tri_right:
        if not (args.tri_left and args.tri_right):
            raise UsageError("--tri-left and --tri-right go together")
        braided = check_braided_group(G, io.read(args.tri_left), io.read(args.tri_right))
        doc["braided_group"] = braided
        code = EXIT_OK if braided else EXIT_NOT_BRAIDED
    _emit(args, doc, [f"{k}: {v}" for k, v in doc.items()])
    return code


COMMANDS = {
    "verify": cmd_verify,
    "build-handy": cmd_build_handy,
    "build-nonhandy": cmd_build_nonhandy,
    "reconstruct": cmd_reconstruct,
    "braiding-table": cmd_braiding_table,
    "census": cmd_census,
    "check-group": cmd_check_group,
}


def _fail(code: int, doc: dict) -> int:
    sys.stderr.write(io.dumps(doc))
    return code


def run(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        _check_paths(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(EXIT_INVALID, {"error": "UsageError", "message": str(exc)})
    except RouteDisagreement as exc:
        return _fail(EXIT_DISAGREEMENT, exc.to_dict())
    except (NotBraided, NotBraidedGroup) as exc:
        return _fail(EXIT_NOT_BRAIDED, exc.to_dict())
    except (NotHandy, PhiMissing) as exc:
        return _fail(EXIT_NOT_APPLICABLE, exc.to_dict())
    except BraidedGroupoidError as exc:
        return _fail(EXIT_INVALID, exc.to_dict())
    except (ValueError, TypeError) as exc:
        return _fail(EXIT_INVALID, {"error": type(exc).__name__, "message": str(exc)})


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
