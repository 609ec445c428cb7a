import random

import pytest

from mtape.automaton import (
    END,
    AutomatonError,
    MultiTapeAutomaton,
    NWord,
    accepting_run,
    accepts,
    all_words,
    bounded_universe,
    check,
    complement,
    enumerate_language,
    enumerate_language_brute,
    is_deterministic,
    is_empty,
    relabel,
    rename_tapes,
    replay,
    restrict,
    trim,
    union,
    validate,
    witness,
    with_alphabet,
)
from mtape.encoding import CHECKERS
from mtape.predicates import aut_anyX, aut_anyY, aut_cat, aut_eq

from oracles import bounded_complement, random_automaton


def W(**words):
    return NWord(words)


class TestNWord:
    def test_equality_ignores_order(self):
        assert NWord({"X": "a", "Y": "b"}) == NWord([("Y", "b"), ("X", "a")])
        assert hash(NWord({"X": "a", "Y": "b"})) == hash(NWord({"Y": "b", "X": "a"}))

    def test_end_marker_rejected(self):
        with pytest.raises(AutomatonError):
            NWord({"X": "a$"})

    def test_project_and_repr(self):
        x = W(X="ab", Y="")
        assert x.project(["Y"]) == W(Y="")
        assert repr(x) == "⟨X:ab, Y:ε⟩"


class TestValidate:
    def test_builders_are_valid(self):
        for A in (aut_eq(), aut_cat(), aut_anyX(), aut_anyY()):
            assert validate(A) == []

    def test_final_state_with_outgoing_edge(self):
        A = MultiTapeAutomaton.build(("a",), ("X",), {0: "X"}, [(0, END, 1), (1, "a", 0)], {0}, {1})
        assert "final-no-outgoing" in [v.invariant for v in validate(A)]

    def test_unknown_tape(self):
        A = MultiTapeAutomaton.build(("a",), ("X",), {0: "Z"}, [(0, END, 1)], {0}, {1})
        assert any(v.invariant == "tape-assignment" for v in validate(A))

    def test_reading_past_end_is_caught(self):
        # after X's end marker, state 1 reads X again and can move on
        A = MultiTapeAutomaton.build(("a",), ("X",), {0: "X", 1: "X"},
                                     [(0, END, 1), (1, "a", 2)], {0}, {2})
        assert any(v.invariant == "no-read-past-end" for v in validate(A))
        with pytest.raises(AutomatonError):
            check(A)

    def test_dead_state_past_end_is_allowed(self):
        A = MultiTapeAutomaton.build(("a",), ("X",), {0: "X", 1: "X"},
                                     [(0, END, 1), (0, "a", 2)], {0}, {2})
        assert validate(A) == []

    def test_bad_alphabet(self):
        with pytest.raises(AutomatonError):
            MultiTapeAutomaton.build(("a", END), ("X",), {0: "X"}, [], {0}, [])


class TestRuns:
    def test_eq_examples(self):
        A = aut_eq()
        assert accepts(A, W(X="ab", Y="ab"))
        assert not accepts(A, W(X="ab", Y="ba"))
        assert not accepts(A, W(X="a", Y="ab"))
        assert accepts(A, W(X="", Y=""))

    def test_cat_examples(self):
        A = aut_cat()
        assert accepts(A, W(X="ab", Y="b", Z="abb"))
        assert not accepts(A, W(X="ab", Y="b", Z="ab"))

    def test_run_witness_replays(self):
        A = aut_cat()
        run = accepting_run(A, W(X="a", Y="b", Z="ab"))
        assert run is not None and run.accepted
        assert run.configurations[0].state == 1
        assert replay(A, run)
        assert accepting_run(A, W(X="a", Y="b", Z="ba")) is None

    def test_missing_tape_is_an_error(self):
        with pytest.raises(AutomatonError):
            accepts(aut_eq(), W(X="a"))

    def test_literal_acceptance_ignores_unread_input(self):
        # accepts as soon as X's end is seen; Y is never read
        A = MultiTapeAutomaton.build(("a",), ("X", "Y"), {0: "X"}, [(0, END, 1)], {0}, {1})
        assert accepts(A, W(X="", Y="aaa"))


class TestEnumeration:
    def test_eq_bounded_language(self):
        expected = {W(X=w, Y=w) for w in all_words("ab", 4)}
        assert enumerate_language(aut_eq(), 4) == expected

    def test_cat_bounded_language(self):
        expected = {W(X=u, Y=v, Z=u + v) for u in all_words("ab", 4) for v in all_words("ab", 4)
                    if len(u + v) <= 4}
        assert enumerate_language(aut_cat(), 4) == expected

    def test_generator_matches_brute_force(self):
        rng = random.Random(7)
        for _ in range(40):
            tapes = tuple("XY"[:rng.randint(1, 2)])
            A = random_automaton(rng, tapes, rng.randint(1, 4), deterministic=rng.random() < 0.5)
            assert enumerate_language(A, 2) == enumerate_language_brute(A, 2)

    def test_bounded_universe_size(self):
        assert len(bounded_universe("ab", ("X", "Y"), 2)) == 7 * 7


class TestEmptiness:
    def test_witness_is_accepted(self):
        for A in (aut_eq(), aut_cat(), aut_anyX()):
            w = witness(A)
            assert w is not None and accepts(A, w)

    def test_empty_automaton(self):
        A = MultiTapeAutomaton.build(("a",), ("X",), {0: "X"}, [(0, "a", 0)], {0}, [])
        assert is_empty(A)
        assert witness(A) is None


class TestUnion:
    def test_union_of_one_sided_automata(self):
        U = union(aut_anyX(), aut_anyY())
        assert validate(U) == []
        assert not is_deterministic(U)
        assert enumerate_language(U, 3) == enumerate_language(aut_anyX(), 3)

    def test_union_shifts_ids(self):
        A, B = aut_eq(), aut_eq()
        U = union(A, B)
        assert len(U.states) == 10
        assert enumerate_language(U, 2) == enumerate_language(A, 2)

    def test_tape_mismatch(self):
        with pytest.raises(AutomatonError):
            union(aut_eq(), aut_eq("X", "Z"))


class TestComplement:
    def test_eq_complement(self):
        C = complement(aut_eq())
        assert validate(C) == [] and is_deterministic(C)
        assert accepts(C, W(X="a", Y="b"))
        assert not accepts(C, W(X="ab", Y="ab"))
        assert enumerate_language(C, 3) == bounded_complement(aut_eq(), 3)

    def test_complement_of_empty_accepts_everything(self):
        A = MultiTapeAutomaton.build(("a", "b"), ("X", "Y"), {0: "X"}, [], {0}, [])
        assert enumerate_language(complement(A), 2) == bounded_universe("ab", ("X", "Y"), 2)

    def test_nondeterministic_input_rejected(self):
        with pytest.raises(AutomatonError):
            complement(union(aut_anyX(), aut_anyY()))

    def test_double_complement(self):
        A = aut_cat()
        assert enumerate_language(complement(complement(A)), 3) == enumerate_language(A, 3)


class TestStructural:
    def test_rename(self):
        A = rename_tapes(aut_eq(), {"X": "P", "Y": "Q"})
        assert A.tapes == ("P", "Q")
        assert accepts(A, W(P="ab", Q="ab"))

    def test_rename_must_be_injective_and_total(self):
        with pytest.raises(AutomatonError):
            rename_tapes(aut_eq(), {"X": "P", "Y": "P"})
        with pytest.raises(AutomatonError):
            rename_tapes(aut_eq(), {"X": "P"})

    def test_trim_keeps_language_and_ids(self):
        A = MultiTapeAutomaton.build(("a",), ("X",), {0: "X", 5: "X"},
                                     [(0, END, 1), (0, "a", 5)], {0}, {1})
        T = trim(A)
        assert T.states == (0, 1)
        assert enumerate_language(T, 3) == enumerate_language(A, 3)
        assert relabel(T).states == (0, 1)

    def test_with_alphabet(self):
        A = with_alphabet(aut_eq(), ("a", "b", "#"))
        assert A.alphabet == ("a", "b", "#")
        assert not accepts(A, W(X="#", Y="#"))

    def test_restrict_to_sequences(self):
        A = aut_eq("X", "Y", ("a", "b", "#"))
        R = restrict(A, {"X": CHECKERS["seq"], "Y": CHECKERS["seq"]})
        assert is_deterministic(R)
        assert enumerate_language(R, 3) == {W(X=w, Y=w) for w in ("", "#", "a#", "b#", "##", "aa#", "ab#",
                                                                   "ba#", "bb#", "a##", "b##", "#a#",
                                                                   "#b#", "###")}
