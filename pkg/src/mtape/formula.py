"""Quantifier-free formulas over predicate automata and their compilation.

A formula's variables are tape names. Compiling a formula gives an
automaton whose accepted n-words are (encodings of) models: predicates
become renamed template automata, negation becomes complement, disjunction
union and conjunction the delay-bounded intersection.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from typing import Union

from .automaton import (
    AutomatonError,
    MultiTapeAutomaton,
    NWord,
    check,
    complement,
    is_deterministic,
    relabel,
    rename_tapes,
    restrict,
    trim,
    union,
    with_alphabet,
)
from .encoding import CHECKERS, DECODERS, ELEM, NAT, SEQ, SIGMA, DecodeError
from .intersection import intersect
from . import predicates as P


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[str, ...]

    def __init__(self, name: str, *args: str):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True)
class Not:
    arg: Formula


# marker: the And node uses the delay bound given to compile
INHERIT = "inherit"


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula
    max_delay: int | None | str = INHERIT


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


Formula = Union[Pred, Not, And, Or]


@dataclass(frozen=True)
class PredicateBinding:
    """A named predicate: a template automaton over canonical tape names.

    ``sorts`` gives the sort of each argument (``None`` for any sort);
    ``semantics``, when present, decides the predicate on decoded values.
    """

    name: str
    template: MultiTapeAutomaton
    sorts: tuple[str | None, ...] | None = None
    semantics: Callable[..., bool] | None = None

    def __post_init__(self):
        check(self.template)
        if self.sorts is None:
            object.__setattr__(self, "sorts", (None,) * self.arity)
        if len(self.sorts) != self.arity:
            raise FormulaError(f"{self.name}: {len(self.sorts)} sorts for arity {self.arity}")

    @property
    def arity(self) -> int:
        return len(self.template.tapes)


Env = Mapping[str, PredicateBinding]


def conj(*fs: Formula) -> Formula:
    """Left-nested conjunction of one or more formulas."""
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def variables(f: Formula) -> list[str]:
    """Free variables in order of first occurrence."""
    seen: dict[str, None] = {}
    for leaf in leaves(f):
        seen.update(dict.fromkeys(leaf.args))
    return list(seen)


def leaves(f: Formula) -> Iterator[Pred]:
    if isinstance(f, Pred):
        yield f
    elif isinstance(f, Not):
        yield from leaves(f.arg)
    else:
        yield from leaves(f.left)
        yield from leaves(f.right)


def infer_sorts(f: Formula, env: Env) -> dict[str, str | None]:
    """Sort of every variable; a variable used at two different sorts is an error."""
    sorts: dict[str, str | None] = {}
    for leaf in leaves(f):
        binding = _binding(leaf, env)
        for var, sort in zip(leaf.args, binding.sorts):
            known = sorts.get(var)
            if sort is not None and known is not None and known != sort:
                raise FormulaError(f"variable {var} used as both {known} and {sort}")
            if known is None:
                sorts[var] = sort
    return sorts


def _binding(leaf: Pred, env: Env) -> PredicateBinding:
    if leaf.name not in env:
        raise FormulaError(f"unbound predicate {leaf.name!r}")
    binding = env[leaf.name]
    if len(leaf.args) != binding.arity:
        raise FormulaError(f"{leaf.name} takes {binding.arity} arguments, got {len(leaf.args)}")
    if len(set(leaf.args)) != len(leaf.args):
        raise FormulaError(f"repeated argument in ({leaf.name} {' '.join(leaf.args)})")
    return binding


def distribute(f: Formula) -> Formula:
    """Push conjunctions below disjunctions (negations are left in place)."""
    if isinstance(f, (Pred, Not)):
        return f
    left, right = distribute(f.left), distribute(f.right)
    if isinstance(f, Or):
        return Or(left, right)
    if isinstance(left, Or):
        return Or(distribute(And(left.left, right, f.max_delay)),
                  distribute(And(left.right, right, f.max_delay)))
    if isinstance(right, Or):
        return Or(distribute(And(left, right.left, f.max_delay)),
                  distribute(And(left, right.right, f.max_delay)))
    return And(left, right, f.max_delay)


def shared_per_conjunction(f: Formula) -> list[tuple[str, ...]]:
    """For every And node (pre-order), the variables shared by its two operands."""
    out: list[tuple[str, ...]] = []

    def walk(g: Formula) -> None:
        if isinstance(g, Pred):
            return
        if isinstance(g, Not):
            walk(g.arg)
            return
        if isinstance(g, And):
            right = set(variables(g.right))
            out.append(tuple(v for v in variables(g.left) if v in right))
        walk(g.left)
        walk(g.right)

    walk(f)
    return out


def lemma_complete(f: Formula) -> bool:
    """True when every conjunction shares at most one variable, so delay 0 loses nothing."""
    return all(len(s) <= 1 for s in shared_per_conjunction(f))


def _alphabet(f: Formula, env: Env) -> tuple[str, ...]:
    out: dict[str, None] = {}
    for leaf in leaves(f):
        out.update(dict.fromkeys(_binding(leaf, env).template.alphabet))
    return tuple(out)


def compile(  # noqa: A001
    f: Formula,
    env: Env,
    max_delay: int | None = 0,
    max_states: int | None = None,
    stop_on_accept: bool = False,
) -> MultiTapeAutomaton:
    """Build an automaton for ``f``.

    Accepted words are exactly the (encoded) models when every conjunction
    shares at most one variable, and a subset of them otherwise. Negation is
    taken relative to well-formed encodings of the argument sorts. Each
    intermediate result is trimmed and renumbered.

    ``stop_on_accept`` applies to a top-level conjunction only: the search
    there halts at the first accepting state, which is enough for a witness.
    """
    sorts = infer_sorts(f, env)
    alphabet = _alphabet(f, env)

    def checkers(tapes) -> dict:
        return {t: CHECKERS[sorts[t]] for t in tapes if sorts.get(t) is not None}

    def go(g: Formula, top: bool = False) -> MultiTapeAutomaton:
        if isinstance(g, Pred):
            binding = _binding(g, env)
            A = rename_tapes(binding.template, dict(zip(binding.template.tapes, g.args)))
            A = with_alphabet(A, alphabet)
            return relabel(trim(restrict(A, checkers(A.tapes))))
        if isinstance(g, Not):
            inner = go(g.arg)
            if not is_deterministic(inner):
                raise FormulaError(f"cannot complement a nondeterministic automaton: {g.arg}")
            return relabel(trim(restrict(complement(inner), checkers(inner.tapes))))
        left, right = go(g.left), go(g.right)
        if isinstance(g, Or):
            try:
                return union(left, right)
            except AutomatonError as exc:
                raise FormulaError(f"union operands differ: {exc}") from None
        d = max_delay if g.max_delay == INHERIT else g.max_delay
        C = intersect(left, right, max_states=max_states, max_delay=d,
                      stop_on_accept=stop_on_accept and top)
        return relabel(trim(C))

    return go(f, top=True)


def decode(x: Mapping[str, str], sorts: Mapping[str, str | None]) -> dict[str, object] | None:
    """Decoded values of an n-word, or None when some tape is not a well-formed encoding."""
    out: dict[str, object] = {}
    try:
        for tape, word in x.items():
            sort = sorts.get(tape)
            out[tape] = word if sort is None else DECODERS[sort](word)
    except DecodeError:
        return None
    return out


def evaluate(f: Formula, env: Env, values: Mapping[str, object]) -> bool:
    """Truth of ``f`` under decoded ``values``, using each binding's semantics."""
    if isinstance(f, Pred):
        binding = _binding(f, env)
        if binding.semantics is None:
            raise FormulaError(f"predicate {f.name} has no semantics")
        return bool(binding.semantics(*(values[a] for a in f.args)))
    if isinstance(f, Not):
        return not evaluate(f.arg, env, values)
    if isinstance(f, And):
        return evaluate(f.left, env, values) and evaluate(f.right, env, values)
    return evaluate(f.left, env, values) or evaluate(f.right, env, values)


def satisfied_by(f: Formula, env: Env, x: NWord | Mapping[str, str]) -> bool:
    """Does the n-word encode a model of ``f``? Malformed encodings never do."""
    values = decode({v: x.get(v, "") for v in variables(f)}, infer_sorts(f, env))
    return values is not None and evaluate(f, env, values)


def _last(z: list[str]) -> str:
    return z[-1] if z else ""


def builtin_env() -> dict[str, PredicateBinding]:
    """The sequence-theory predicates over {a, b, #}."""
    entries = [
        ("eq", P.aut_eq("X", "Y", SIGMA), (None, None), lambda x, y: x == y),
        ("cat", P.aut_cat("X", "Y", "Z", SIGMA), (SEQ, SEQ, SEQ), lambda x, y, z: x + y == z),
        ("len", P.aut_len(), (SEQ, NAT), lambda x, n: len(x) >= n),
        ("size", P.aut_size(), (SEQ, NAT), lambda x, n: len(x) == n),
        ("rest", P.aut_rest(), (SEQ, SEQ), lambda x, y: len(x) > 0 and x[1:] == y),
        ("dec", P.aut_dec(), (NAT, NAT), lambda m, n: m == n - 1),
        ("zero", P.aut_zero(), (NAT,), lambda n: n == 0),
        ("sub", P.aut_sub(), (SEQ, NAT, NAT), lambda y, m, u: u + m == len(y)),
        ("last", P.aut_last(), (SEQ, ELEM), lambda z, u: u == _last(z)),
    ]
    return {name: PredicateBinding(name, A, sorts, sem) for name, A, sorts, sem in entries}
