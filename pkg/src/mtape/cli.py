"""Command-line interface: ``mtape SUBCOMMAND ...``.

Exit codes: 0 success (for ``empty``: the language is empty), 1 for a
nonempty language or a failed validation, 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .automaton import (
    AutomatonError,
    accepting_run,
    complement,
    relabel,
    rename_tapes,
    trim,
    union,
    validate,
    witness,
)
from .determinize import complement_approx, determinize_approx
from .experiments import format_table, format_tsv, run_table
from .formula import FormulaError, builtin_env, compile
from .intersection import PATH_MODES, Intersector
from .textio import (
    ParseError,
    format_nword,
    load_env,
    parse_automaton,
    parse_formula,
    parse_nword,
    read_automaton,
    serialize_automaton,
    to_dot,
    write_automaton,
)

DEFAULT_UNBOUNDED_CAP = 100_000

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _delay(text: str) -> int | None:
    if text == "inf":
        return None
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural or 'inf', got {text!r}") from None
    if d < 0:
        raise argparse.ArgumentTypeError("delay must be nonnegative")
    return d


def _cap(args, delay: int | None) -> int | None:
    if args.max_states is not None:
        return args.max_states
    env = os.environ.get("MTAP_MAX_STATES")
    if env:
        return int(env)
    return DEFAULT_UNBOUNDED_CAP if delay is None else None


def _emit(A, out: str | None) -> None:
    if out:
        write_automaton(A, out)
    else:
        sys.stdout.write(serialize_automaton(A))


def _read(path: str):
    if path == "-":
        return parse_automaton(sys.stdin.read())
    return read_automaton(path)


def cmd_validate(args) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    try:
        A = parse_automaton(text)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return EXIT_NO
    problems = validate(A)
    for v in problems:
        print(v, file=sys.stderr)
    if not problems:
        print("ok")
    return EXIT_NO if problems else EXIT_OK


def cmd_accepts(args) -> int:
    A = _read(args.file)
    run = accepting_run(A, parse_nword(args.word))
    print("true" if run else "false")
    if args.trace and run:
        for c in run.configurations:
            rest = " ".join(f"{t}={w or '_'}" for t, w in c.remaining.items())
            print(f"  {c.state}  {rest}")
    return EXIT_OK


def cmd_empty(args) -> int:
    A = _read(args.file)
    w = witness(A)
    if w is None:
        print("empty")
        return EXIT_OK
    print("nonempty")
    print(format_nword(w))
    return EXIT_NO


def cmd_union(args) -> int:
    _emit(union(_read(args.a), _read(args.b)), args.output)
    return EXIT_OK


def cmd_complement(args) -> int:
    _emit(complement(_read(args.a)), args.output)
    return EXIT_OK


def cmd_rename(args) -> int:
    mapping = {}
    for item in args.map.split(","):
        old, eq, new = item.partition("=")
        if not eq:
            raise ParseError(f"bad mapping entry {item!r}, expected OLD=NEW")
        mapping[old.strip()] = new.strip()
    A = _read(args.a)
    # tapes not mentioned keep their names
    full = {t: mapping.get(t, t) for t in A.tapes}
    unknown = set(mapping) - set(A.tapes)
    if unknown:
        raise ParseError(f"unknown tapes in mapping: {sorted(unknown)}")
    _emit(rename_tapes(A, full), args.output)
    return EXIT_OK


def cmd_trim(args) -> int:
    _emit(trim(_read(args.a)), args.output)
    return EXIT_OK


def cmd_intersect(args) -> int:
    A, B = _read(args.a), _read(args.b)
    cap = _cap(args, args.max_delay)
    t0 = time.perf_counter()
    run = Intersector(A, B, cap, args.max_delay, args.stop_on_accept, args.paths).run()
    C = relabel(trim(run.automaton()))
    elapsed = time.perf_counter() - t0
    _emit(C, args.output)
    out = sys.stderr if not args.output else sys.stdout
    print(f"states {len(C.states)}", file=out)
    print(f"transitions {len(C.transitions)}", file=out)
    print(f"seconds {elapsed:.3f}", file=out)
    if run.truncated:
        print(f"note: stopped at the state cap ({cap})", file=out)
    return EXIT_OK


def cmd_determinize(args) -> int:
    _emit(determinize_approx(_read(args.a), args.bound), args.output)
    return EXIT_OK


def cmd_complement_approx(args) -> int:
    _emit(complement_approx(_read(args.a), args.bound), args.output)
    return EXIT_OK


def cmd_compile(args) -> int:
    f = parse_formula(Path(args.formula).read_text(encoding="utf-8"))
    env = builtin_env() if args.env == "builtin" else load_env(args.env)
    cap = _cap(args, args.max_delay)
    A = compile(f, env, max_delay=args.max_delay, max_states=cap,
                stop_on_accept=args.stop_on_accept)
    _emit(A, args.output)
    return EXIT_OK


def cmd_dot(args) -> int:
    text = to_dot(_read(args.a))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_experiment(args) -> int:
    results = run_table(args.max_states)
    if args.format in ("tsv", "both"):
        sys.stdout.write(format_tsv(results))
    if args.format == "both":
        sys.stdout.write("\n")
    if args.format in ("table", "both"):
        sys.stdout.write(format_table(results))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mtape", description="Multi-tape automata toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an automaton file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("accepts", help="test membership of an n-word")
    s.add_argument("file")
    s.add_argument("--word", required=True, help='e.g. "X=ab Y=_"')
    s.add_argument("--trace", action="store_true", help="print the accepting run")
    s.set_defaults(func=cmd_accepts)

    s = sub.add_parser("empty", help="emptiness check; exit 0 if empty, 1 otherwise")
    s.add_argument("file")
    s.set_defaults(func=cmd_empty)

    def unary(name, func, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("a")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)
        return s

    s = sub.add_parser("union", help="union of two automata over the same tapes")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_union)

    unary("complement", cmd_complement, "exact complement of a deterministic automaton")
    s = unary("rename", cmd_rename, "rename tapes")
    s.add_argument("--map", required=True, help="OLD=NEW,OLD=NEW")
    unary("trim", cmd_trim, "remove useless states")
    unary("dot", cmd_dot, "graphviz dump")

    s = sub.add_parser("intersect", help="delay-bounded intersection")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.add_argument("--max-delay", type=_delay, default=None, metavar="D|inf")
    s.add_argument("--max-states", type=int)
    s.add_argument("--stop-on-accept", action="store_true")
    s.add_argument("--paths", choices=PATH_MODES, default="shortest")
    s.set_defaults(func=cmd_intersect)

    s = unary("determinize", cmd_determinize, "approximate determinization")
    s.add_argument("--bound", type=int, required=True)
    s = unary("complement-approx", cmd_complement_approx, "complement of the approximate determinization")
    s.add_argument("--bound", type=int, required=True)

    s = sub.add_parser("compile", help="compile a formula to an automaton")
    s.add_argument("formula", help="file holding the formula")
    s.add_argument("--env", default="builtin", help="directory of NAME.aut files, or 'builtin'")
    s.add_argument("-o", "--output")
    s.add_argument("--max-delay", type=_delay, default=0, metavar="D|inf")
    s.add_argument("--max-states", type=int)
    s.add_argument("--stop-on-accept", action="store_true")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("experiment", help="run the benchmark table")
    s.add_argument("name", choices=["table1"])
    s.add_argument("--format", choices=["tsv", "table", "both"], default="both")
    s.add_argument("--max-states", type=int)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, AutomatonError, FormulaError, OSError, ValueError) as exc:
        print(f"mtape: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
