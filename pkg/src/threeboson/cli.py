"""Command-line front end: ``threeboson analyze|canonicalize|sweep|audit``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .canonical import CLASS_EPS, canonicalize
from .errors import ConsistencyError, NoRootFound, ThreeBosonError
from .sweep import (
    FIGURES,
    InvalidInput,
    analyze_document,
    canonical_document,
    dumps,
    parse_state_input,
    run_audit,
    write_figure,
)

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_INVARIANT = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _common(p):
    p.add_argument("--epsilon", type=float, default=CLASS_EPS, help="zero-classification tolerance")
    p.add_argument("--quiet", action="store_true", help="suppress progress messages")
    p.add_argument("--workers", type=int, default=1, help="worker processes (output is identical)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="threeboson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="canonical form, class, measures and squeezing of one state")
    p.add_argument("--in", dest="input", required=True, help="StateInput JSON file, or - for stdin")
    p.add_argument("--json", action="store_true", help="emit the full JSON document (default: summary)")
    _common(p)

    p = sub.add_parser("canonicalize", help="standard form (r, s, t, phi) and its transform")
    p.add_argument("--in", dest="input", required=True)
    _common(p)

    p = sub.add_parser("sweep", help="CSV data for one figure")
    p.add_argument("--figure", required=True, choices=FIGURES)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--out", required=True)
    _common(p)

    p = sub.add_parser("audit", help="randomized cross-checks of every identity")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    _common(p)
    return parser


def _read_input(src: str):
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
        return parse_state_input(json.loads(text))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(str(exc)) from exc


def _summary(doc) -> str:
    c = doc["canonical"]
    e = doc["entanglement"]
    q = doc["squeezing"]["closed"]
    lines = [
        f"class          {doc['class']}",
        f"(r, s, t, phi) ({c['r']:.10g}, {c['s']:.10g}, {c['t']:.10g}, {c['phi']:.10g})",
        f"concurrence    {e['concurrence_oracle']:.10g}  (closed form {e['concurrence_closed']:.10g})",
        f"tau            {e['tau_oracle']:.10g}  (closed form {e['tau_closed']:.10g})",
        f"xi             {q['xi']:.10g}  ({q['method']})",
    ]
    if doc["flags"]:
        lines.append("flags          " + ", ".join(doc["flags"]))
    return "\n".join(lines) + "\n"


def _run(args) -> int:
    log = (lambda *a: None) if args.quiet else (lambda *a: print(*a, file=sys.stderr))
    if args.command == "analyze":
        doc = analyze_document(_read_input(args.input), args.epsilon)
        sys.stdout.write(dumps(doc) if args.json else _summary(doc))
    elif args.command == "canonicalize":
        sys.stdout.write(dumps(canonical_document(canonicalize(_read_input(args.input)))))
    elif args.command == "sweep":
        if args.workers < 1:
            raise InvalidInput("--workers must be at least 1")
        meta = write_figure(args.figure, args.out, args.resolution, args.workers)
        log(f"wrote {meta['rows']} rows to {args.out}")
    elif args.command == "audit":
        if args.workers < 1:
            raise InvalidInput("--workers must be at least 1")
        rep = run_audit(args.trials, args.seed, args.workers)
        Path(args.out).write_text(dumps(rep))
        for k, v in rep["maxResiduals"].items():
            log(f"{k:45s} {v:.3e}")
        if not rep["passed"]:
            log("failed: " + ", ".join(rep["failures"]))
            return EXIT_INVARIANT
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except NoRootFound as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ConsistencyError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ThreeBosonError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
