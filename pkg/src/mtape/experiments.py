"""The benchmark table: two language intersections and six formula emptiness checks.

Each row builds one composite automaton and tests it for emptiness. The
``vc`` rows are verification conditions of a list-length routine (negated,
so emptiness means the condition holds); the ``ice`` rows are wrong
variants whose witnesses are counterexamples; ``cat0`` asks whether
concatenation preserves the last element.
"""

from __future__ import annotations

import os
import time
from collections.abc import Callable
from dataclasses import dataclass, field

from .automaton import MultiTapeAutomaton, NWord, relabel, trim, witness
from .encoding import DECODERS
from .formula import And, Formula, Not, Or, Pred, builtin_env, compile, conj, infer_sorts
from .intersection import intersect
from . import predicates as P

DEFAULT_CAP = 500_000


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    return Or(Not(antecedent), consequent)


@dataclass(frozen=True)
class Row:
    name: str
    build: Callable[[int | None], MultiTapeAutomaton]
    expected_empty: bool
    formula: Formula | None = None      # the formula whose models the automaton accepts
    claim: Formula | None = None        # the property that emptiness establishes
    notes: str = ""


@dataclass
class Result:
    name: str
    states: int
    transitions: int
    build_seconds: float
    empty_seconds: float
    empty: bool
    witness: NWord | None
    decoded: dict[str, object] = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        return "Y" if self.empty else "N"


def _pair(f, g) -> Callable[[int | None], MultiTapeAutomaton]:
    def build(cap):
        return relabel(trim(intersect(f(), g(), max_states=cap, max_delay=None)))
    return build


def _formula(f: Formula, stop_on_accept: bool = False) -> Callable[[int | None], MultiTapeAutomaton]:
    def build(cap):
        return compile(f, builtin_env(), max_delay=0, max_states=cap, stop_on_accept=stop_on_accept)
    return build


def _rows() -> list[Row]:
    len_, rest, dec, zero = (lambda *a: Pred("len", *a)), (lambda *a: Pred("rest", *a)), \
        (lambda *a: Pred("dec", *a)), (lambda *a: Pred("zero", *a))
    size, sub = (lambda *a: Pred("size", *a)), (lambda *a: Pred("sub", *a))

    # vc0: base case; x nonempty with rest y, and n = 1
    vc0 = conj(And(dec("M", "N"), zero("M")), Not(len_("X", "N")), rest("X", "Y"))
    # vc1: inductive step of "length at least n"
    vc1 = conj(len_("Y", "M"), rest("X", "Y"), dec("M", "N"), Not(len_("X", "N")))
    # vc2: inductive step of "u = |y| - m", restated for x and n
    vc2 = conj(size("R", "U"), sub("Y", "M", "U"), rest("X", "Y"), dec("M", "N"),
               sub("X", "N", "V"), Not(size("R", "V")))
    # ice1 / ice2: the same steps with the decrement forgotten
    ice1 = conj(len_("Y", "M"), rest("X", "Y"), len_("X", "N"))
    ice2 = conj(And(size("R", "U"), sub("Y", "M", "U")), rest("X", "Y"), Not(size("R", "V")))
    cat0 = conj(Pred("cat", "X", "Y", "Z"), Pred("last", "Z", "U"), Pred("last", "Y", "V"),
                Not(Pred("eq", "U", "V")))

    def negated(f: Formula) -> Formula:
        *ante, cons = _conjuncts(f)
        return implies(conj(*ante), cons.arg if isinstance(cons, Not) else Not(cons))

    return [
        Row("L12", _pair(P.aut_L1, P.aut_L2), False, notes="L1 ∩ L2, unbounded delay"),
        Row("L34", _pair(P.aut_L3, P.aut_L4), False, notes="L3 ∩ L4, unbounded delay"),
        Row("vc0", _formula(vc0), True, vc0, negated(vc0)),
        Row("vc1", _formula(vc1), True, vc1, negated(vc1)),
        Row("vc2", _formula(vc2), True, vc2, negated(vc2)),
        Row("ice1", _formula(ice1), False, ice1, negated(ice1)),
        Row("ice2", _formula(ice2), False, ice2, negated(ice2)),
        Row("cat0", _formula(cat0, stop_on_accept=True), False, cat0, negated(cat0)),
    ]


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


ROWS = _rows()


def decode_witness(row: Row, w: NWord) -> dict[str, object]:
    if row.formula is None:
        return dict(w)
    sorts = infer_sorts(row.formula, builtin_env())
    return {t: (DECODERS[sorts[t]](word) if sorts.get(t) else word) for t, word in w.items()}


def run_row(row: Row, cap: int | None = DEFAULT_CAP) -> Result:
    t0 = time.perf_counter()
    A = row.build(cap)
    t1 = time.perf_counter()
    w = witness(A)
    t2 = time.perf_counter()
    return Result(row.name, len(A.states), len(A.transitions), t1 - t0, t2 - t1,
                  w is None, w, decode_witness(row, w) if w is not None else {})


def default_cap() -> int:
    return int(os.environ.get("MTAP_MAX_STATES", DEFAULT_CAP))


def run_table(cap: int | None = None) -> list[Result]:
    cap = default_cap() if cap is None else cap
    return [run_row(row, cap) for row in ROWS]


def _show(value: object) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(v or "ε" for v in value) + "]"
    if isinstance(value, str):
        return value or "ε"
    return str(value)


def format_witness(r: Result) -> str:
    if r.witness is None:
        return "-"
    return " ".join(f"{t}={_show(v)}" for t, v in r.decoded.items())


def format_tsv(results: list[Result]) -> str:
    head = "row\tintersect_s\tstates\ttransitions\tempty_s\toutcome\twitness"
    lines = [head] + [
        f"{r.name}\t{r.build_seconds:.3f}\t{r.states}\t{r.transitions}\t"
        f"{r.empty_seconds:.3f}\t{r.outcome}\t{format_witness(r)}"
        for r in results
    ]
    return "\n".join(lines) + "\n"


def format_table(results: list[Result]) -> str:
    cols = ["row", "intersect (s)", "|Q|", "|δ|", "empty (s)", "empty?", "witness"]
    body = [[r.name, f"{r.build_seconds:.2f}", str(r.states), str(r.transitions),
             f"{r.empty_seconds:.2f}", r.outcome, format_witness(r)] for r in results]
    widths = [max(len(c), *(len(b[i]) for b in body)) for i, c in enumerate(cols)]
    fmt = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    rule = "  ".join("-" * w for w in widths)
    return "\n".join([fmt(cols), rule, *map(fmt, body)]) + "\n"
