"""Text formats: automaton documents, n-words and formulas.

An automaton document has one declaration per line::

    automaton eq
    alphabet a b
    tapes X Y
    state 1 tape X initial
    state 5 final
    trans 1 a 2

Lines whose first non-blank character is ``#`` are comments. Comments
cannot trail a declaration because ``#`` may itself be an alphabet symbol.
"""

from __future__ import annotations

import re
from pathlib import Path

from .automaton import END, AutomatonError, MultiTapeAutomaton, NWord, check
from .formula import INHERIT, And, Formula, Not, Or, Pred, PredicateBinding


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def parse_automaton(text: str) -> MultiTapeAutomaton:
    name = ""
    alphabet: list[str] | None = None
    tapes: list[str] | None = None
    tape_of: dict[int, str] = {}
    declared: set[int] = set()
    initial: set[int] = set()
    final: set[int] = set()
    trans: list[tuple[int, str, int, int]] = []
    seen_header: set[str] = set()

    def state_id(tok: str, ln: int) -> int:
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"state id must be an integer, got {tok!r}", ln) from None

    for ln, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *rest = line.split()
        if key in ("automaton", "alphabet", "tapes"):
            if key in seen_header:
                raise ParseError(f"duplicate {key} declaration", ln)
            seen_header.add(key)
        if key == "automaton":
            # the name is the rest of the line; composite names contain spaces
            if not rest:
                raise ParseError("expected: automaton NAME", ln)
            name = line.split(None, 1)[1]
        elif key == "alphabet":
            bad = [s for s in rest if len(s) != 1 or s == END]
            if bad:
                raise ParseError(f"alphabet symbols must be single characters other than $: {bad}", ln)
            if len(set(rest)) != len(rest):
                raise ParseError("duplicate alphabet symbol", ln)
            alphabet = rest
        elif key == "tapes":
            if len(set(rest)) != len(rest):
                raise ParseError("duplicate tape name", ln)
            tapes = rest
        elif key == "state":
            if not rest:
                raise ParseError("expected: state ID [tape T] [initial] [final]", ln)
            q = state_id(rest[0], ln)
            if q in declared:
                raise ParseError(f"state {q} declared twice", ln)
            declared.add(q)
            words = rest[1:]
            i = 0
            while i < len(words):
                w = words[i]
                if w == "tape" and i + 1 < len(words):
                    if tapes is not None and words[i + 1] not in tapes:
                        raise ParseError(f"unknown tape {words[i + 1]!r}", ln)
                    tape_of[q] = words[i + 1]
                    i += 2
                    continue
                if w == "initial":
                    initial.add(q)
                elif w == "final":
                    final.add(q)
                else:
                    raise ParseError(f"unexpected {w!r} in state declaration", ln)
                i += 1
            if q in final and q in tape_of:
                raise ParseError(f"final state {q} cannot have a tape", ln)
            if q not in final and q not in tape_of:
                raise ParseError(f"state {q} needs a tape", ln)
        elif key == "trans":
            if len(rest) != 3:
                raise ParseError("expected: trans SRC SYM DST", ln)
            trans.append((state_id(rest[0], ln), rest[1], state_id(rest[2], ln), ln))
        else:
            raise ParseError(f"unknown declaration {key!r}", ln)

    if alphabet is None:
        raise ParseError("missing alphabet declaration")
    if tapes is None:
        raise ParseError("missing tapes declaration")
    if not declared:
        raise ParseError("no states")
    seen_trans = set()
    for p, sym, q, ln in trans:
        for s in (p, q):
            if s not in declared:
                raise ParseError(f"undeclared state {s}", ln)
        if sym != END and sym not in alphabet:
            raise ParseError(f"symbol {sym!r} is not in the alphabet", ln)
        if (p, sym, q) in seen_trans:
            raise ParseError(f"duplicate transition {p} {sym} {q}", ln)
        seen_trans.add((p, sym, q))
    for q, t in tape_of.items():
        if t not in tapes:
            raise ParseError(f"state {q} reads unknown tape {t!r}")
    try:
        A = MultiTapeAutomaton(tuple(alphabet), tuple(tapes), tuple(declared), tape_of,
                               tuple((p, s, q) for p, s, q, _ in trans),
                               frozenset(initial), frozenset(final), name=name)
        return check(A)
    except AutomatonError as exc:
        raise ParseError(str(exc)) from None


def serialize_automaton(A: MultiTapeAutomaton) -> str:
    """Canonical document: header, states by id, transitions sorted."""
    lines = []
    if A.name:
        lines.append(f"automaton {A.name}")
    lines.append("alphabet " + " ".join(A.alphabet))
    lines.append("tapes " + " ".join(A.tapes))
    for q in A.states:
        parts = [f"state {q}"]
        if q in A.tape_of:
            parts.append(f"tape {A.tape_of[q]}")
        if q in A.initial:
            parts.append("initial")
        if q in A.final:
            parts.append("final")
        lines.append(" ".join(parts))
    lines += [f"trans {p} {s} {q}" for p, s, q in A.transitions]
    return "\n".join(lines) + "\n"


def read_automaton(path: str | Path) -> MultiTapeAutomaton:
    return parse_automaton(Path(path).read_text(encoding="utf-8"))


def write_automaton(A: MultiTapeAutomaton, path: str | Path) -> None:
    Path(path).write_text(serialize_automaton(A), encoding="utf-8", newline="\n")


def to_dot(A: MultiTapeAutomaton) -> str:
    out = [f'digraph "{A.name or "automaton"}" {{', "  rankdir=LR;"]
    for q in A.states:
        shape = "doublecircle" if q in A.final else "circle"
        label = f"{q}" if q in A.final else f"{q}\\n{A.tape_of[q]}"
        out.append(f'  {q} [shape={shape}, label="{label}"];')
        if q in A.initial:
            out.append(f"  start{q} [shape=point]; start{q} -> {q};")
    for p, s, q in A.transitions:
        out.append(f'  {p} -> {q} [label="{s}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# n-words: ``X=ab Y=_``

def parse_nword(text: str) -> NWord:
    words: dict[str, str] = {}
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        tape, eq, word = tok.partition("=")
        if not eq or not tape:
            raise ParseError(f"expected TAPE=WORD, got {tok!r}", column=m.start() + 1)
        if tape in words:
            raise ParseError(f"tape {tape} given twice", column=m.start() + 1)
        if END in word:
            raise ParseError("the end marker cannot appear in a word", column=m.start() + 1)
        words[tape] = "" if word == "_" else word
    return NWord(words)


def format_nword(x: NWord) -> str:
    return " ".join(f"{t}={w or '_'}" for t, w in x.items())


# formulas: fully parenthesized prefix form

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
            break
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start + 1))
        pos = m.end()
    return out


def parse_formula(text: str) -> Formula:
    """Parse ``(and F G)``, ``(or F G)``, ``(not F)`` and ``(P X Y ...)``.

    ``(and :delay D F G)`` overrides the delay bound of one conjunction
    (``D`` an integer or ``inf``). ``and`` and ``or`` take two or more
    operands and nest to the left.
    """
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty formula")
    pos = 0

    def expect(kind: str) -> tuple[str, int]:
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"unexpected end of formula, expected {kind}")
        tok = toks[pos]
        pos += 1
        return tok

    def node() -> Formula:
        nonlocal pos
        tok, col = expect("(")
        if tok != "(":
            raise ParseError(f"expected '(', got {tok!r}", column=col)
        head, col = expect("operator")
        if head in "()":
            raise ParseError("expected an operator or predicate name", column=col)
        delay: int | None | str = INHERIT
        if head == "and" and pos < len(toks) and toks[pos][0] == ":delay":
            pos += 1
            val, vcol = expect("delay")
            if val == "inf":
                delay = None
            elif val.isdigit():
                delay = int(val)
            else:
                raise ParseError(f"bad delay {val!r}", column=vcol)
        if head in ("and", "or", "not"):
            args = []
            while pos < len(toks) and toks[pos][0] != ")":
                args.append(node())
            expect(")")
            if head == "not":
                if len(args) != 1:
                    raise ParseError("not takes one operand", column=col)
                return Not(args[0])
            if len(args) < 2:
                raise ParseError(f"{head} takes at least two operands", column=col)
            out = args[0]
            for a in args[1:]:
                out = And(out, a, delay) if head == "and" else Or(out, a)
            return out
        names = []
        while True:
            tok, tcol = expect(")")
            if tok == ")":
                break
            if tok == "(":
                raise ParseError("predicate arguments must be variables", column=tcol)
            names.append(tok)
        return Pred(head, *names)

    f = node()
    if pos != len(toks):
        raise ParseError(f"trailing input {toks[pos][0]!r}", column=toks[pos][1])
    return f


def format_formula(f: Formula) -> str:
    if isinstance(f, Pred):
        return "(" + " ".join((f.name, *f.args)) + ")"
    if isinstance(f, Not):
        return f"(not {format_formula(f.arg)})"
    if isinstance(f, Or):
        return f"(or {format_formula(f.left)} {format_formula(f.right)})"
    delay = ""
    if f.max_delay != INHERIT:
        delay = ":delay " + ("inf" if f.max_delay is None else str(f.max_delay)) + " "
    return f"(and {delay}{format_formula(f.left)} {format_formula(f.right)})"


def load_env(directory: str | Path) -> dict:
    """Predicate bindings from ``NAME.aut`` files; tapes are the template's own names."""
    out = {}
    for path in sorted(Path(directory).glob("*.aut")):
        out[path.stem] = PredicateBinding(path.stem, read_automaton(path))
    if not out:
        raise ParseError(f"no .aut files in {directory}")
    return out
