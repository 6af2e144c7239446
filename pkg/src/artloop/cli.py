"""Command-line front end.

Exit status: 0 when every square commutes, 1 on a verification failure,
2 on usage, parse, validation or I/O errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import SQUARE_ORDER
from .scenario import (
    BUILTINS, ParseError, ValidationError, load_builtin, parse_scenario, run, verify,
)
from .scenario.dsl import Epsilons
from .scenario.harness import CycleError, Trace, VerificationReport
from .traceio import TraceFormatError, export_trace, from_json

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artloop", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    r = sub.add_parser("run", help="run a scenario and write its trace")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("scenario", nargs="?", help="scenario file")
    src.add_argument("--builtin", metavar="NAME", help="one of: " + ", ".join(BUILTINS))
    r.add_argument("--format", choices=("csv", "json"), default="json")
    r.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    r.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                   help="e.g. run.cycles=100 or epsilon.plant=1e-4 (repeatable)")

    v = sub.add_parser("verify", help="re-check a stored JSON trace")
    v.add_argument("trace")
    v.add_argument("--override", action="append", default=[], metavar="epsilon.SQUARE=VALUE")

    p = sub.add_parser("report", help="summarise residuals and the verdict")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("input", nargs="?", help="JSON trace or scenario file")
    src.add_argument("--builtin", metavar="NAME")
    p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")

    sub.add_parser("list-builtins", help="list the bundled scenarios")
    return ap


def _load_scenario(path, builtin, overrides):
    if builtin is not None:
        try:
            return load_builtin(builtin, overrides)
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    return parse_scenario(Path(path).read_text(encoding="utf-8"), overrides)


def _epsilon_overrides(trace: Trace, overrides) -> Epsilons:
    eps = trace.scenario.epsilon.as_dict()
    for ov in overrides:
        key, eq, val = ov.partition("=")
        block, _, square = key.strip().partition(".")
        if not eq or block != "epsilon" or square not in SQUARE_ORDER:
            raise UsageError(f"verify only accepts epsilon.<{'|'.join(SQUARE_ORDER)}>=VALUE, got {ov!r}")
        try:
            x = float(val)
        except ValueError:
            raise UsageError(f"override {ov!r}: {val!r} is not a number") from None
        if not x >= 0:
            raise UsageError(f"override {ov!r}: epsilon must be non-negative")
        eps[square] = x
    return Epsilons(**eps)


def _failure_line(rep: VerificationReport) -> str:
    if rep.passed:
        return f"PASS {rep.scenario}: {4 * rep.cycles} of {4 * rep.cycles} squares commute"
    cycle, square = rep.verdict.first_failure
    return f"FAIL {rep.scenario}: first failure at cycle {cycle}, square {square}"


def render_report(rep: VerificationReport) -> str:
    lines = [
        f"scenario   {rep.scenario}",
        f"hash       {rep.scenario_hash}",
        f"output     {rep.output_class} (the final physical state of the plant)",
        f"cycles     {rep.cycles}",
        "",
        f"{'square':<11}{'passed':>14}{'max residual':>16}{'epsilon':>12}",
    ]
    for name in SQUARE_ORDER:
        s = rep.squares[name]
        lines.append(f"{name:<11}{f'{s.passed}/{s.total}':>14}{s.max_residual:>16.6g}{s.epsilon:>12.6g}")
    lines += ["", _failure_line(rep)]
    return "\n".join(lines) + "\n"


def _write(data: bytes, out) -> None:
    if out is None:
        sys.stdout.write(data.decode())
    else:
        Path(out).write_bytes(data)


def execute(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_ERROR
    try:
        if args.verb == "list-builtins":
            print("\n".join(BUILTINS))
            return EXIT_PASS
        if args.verb == "run":
            trace = run(_load_scenario(args.scenario, args.builtin, args.override))
            _write(export_trace(trace, args.format), args.out)
            rep = verify(trace)
        elif args.verb == "verify":
            trace = from_json(Path(args.trace).read_text(encoding="utf-8"))
            rep = verify(trace, _epsilon_overrides(trace, args.override))
        else:
            if args.builtin is None and args.input.endswith(".json"):
                trace = from_json(Path(args.input).read_text(encoding="utf-8"))
                rep = verify(trace, _epsilon_overrides(trace, args.override))
            else:
                rep = verify(run(_load_scenario(args.input, args.builtin, args.override)))
            sys.stdout.write(render_report(rep))
            return EXIT_PASS if rep.passed else EXIT_FAIL
        print(_failure_line(rep), file=sys.stderr)
        return EXIT_PASS if rep.passed else EXIT_FAIL
    except (ParseError, ValidationError, TraceFormatError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e.strerror or e}: {e.filename or ''}".rstrip(": "), file=sys.stderr)
    except CycleError as e:
        print(f"error: simulation stopped at {e}", file=sys.stderr)
    except Exception as e:  # the exit-code contract is total
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
