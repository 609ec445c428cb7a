"""Multi-tape automata with delay-bounded intersection."""

from .automaton import (
    END,
    AutomatonError,
    MultiTapeAutomaton,
    NWord,
    accepting_run,
    accepts,
    check,
    complement,
    enumerate_language,
    is_deterministic,
    is_empty,
    rename_tapes,
    trim,
    union,
    validate,
    witness,
)
from .determinize import complement_approx, determinize_approx
from .formula import And, Not, Or, Pred, PredicateBinding, builtin_env, compile
from .intersection import async_next, intersect
from .textio import parse_automaton, parse_formula, parse_nword, serialize_automaton

__all__ = [
    "END", "AutomatonError", "MultiTapeAutomaton", "NWord", "accepting_run", "accepts",
    "check", "complement", "enumerate_language", "is_deterministic", "is_empty",
    "rename_tapes", "trim", "union", "validate", "witness", "complement_approx",
    "determinize_approx", "And", "Not", "Or", "Pred", "PredicateBinding", "builtin_env",
    "compile", "async_next", "intersect", "parse_automaton", "parse_formula", "parse_nword",
    "serialize_automaton",
]
