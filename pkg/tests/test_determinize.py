import random

import pytest

from mtape.automaton import (
    AutomatonError,
    MultiTapeAutomaton,
    NWord,
    bounded_universe,
    complement,
    enumerate_language,
    is_deterministic,
    union,
    validate,
)
from mtape.determinize import complement_approx, determinize_approx
from mtape.predicates import aut_anyX, aut_anyY, aut_cat, aut_eq, aut_last
from mtape.textio import parse_automaton

from oracles import bounded_complement, random_automaton


def unequal():
    """⟨aˣ, aʸ⟩ with x ≠ y, deterministic."""
    return MultiTapeAutomaton.build(
        ("a",), ("X", "Y"), {0: "X", 1: "Y", 2: "Y"},
        [(0, "a", 1), (0, "$", 2), (1, "a", 0), (1, "$", 9), (2, "a", 9)], {0}, {9})


def not_double():
    """⟨aˣ, aʸ⟩ with x ≠ 2y, deterministic."""
    return MultiTapeAutomaton.build(
        ("a",), ("X", "Y"), {0: "Y", 1: "X", 2: "X", 3: "X"},
        [(0, "a", 1), (0, "$", 3), (1, "a", 2), (1, "$", 9), (2, "a", 0), (2, "$", 9),
         (3, "a", 9)], {0}, {9})


def in_guess_language(x: NWord) -> bool:
    m, n = len(x["X"]), len(x["Y"])
    return m != n or m != 2 * n


def test_component_automata_are_right():
    assert all(len(x["X"]) != len(x["Y"]) for x in enumerate_language(unequal(), 4))
    assert all(len(x["X"]) != 2 * len(x["Y"]) for x in enumerate_language(not_double(), 4))
    assert len(enumerate_language(unequal(), 4)) == 25 - 5


@pytest.mark.parametrize("A", [aut_eq(), aut_cat(), unequal()], ids=["eq", "cat", "neq"])
@pytest.mark.parametrize("b", [0, 2])
def test_identity_on_deterministic_input(A, b):
    D = determinize_approx(A, b)
    assert is_deterministic(D)
    assert enumerate_language(D, 3) == enumerate_language(A, 3)


def test_union_of_one_sided_automata():
    U = union(aut_anyX(), aut_anyY())
    D = determinize_approx(U, 2)
    assert is_deterministic(D) and validate(D) == []
    assert enumerate_language(D, 3) <= enumerate_language(U, 3)


def test_guessing_language_under_approximated():
    A = union(unequal(), not_double())
    assert not is_deterministic(A)
    for b in (0, 1, 2, 3):
        L = enumerate_language(determinize_approx(A, b), 4)
        assert L and all(in_guess_language(x) for x in L)


def test_lookahead_decides_between_branches():
    # ⟨aa, a⟩ has x ≠ y but x = 2y: only the first union member accepts it.
    # Without lookahead the machine commits to the second member at once.
    A = union(unequal(), not_double())
    x = NWord(X="aa", Y="a")
    assert x not in enumerate_language(determinize_approx(A, 0), 2)
    assert x in enumerate_language(determinize_approx(A, 5), 2)


def test_complement_approx_examples():
    assert (enumerate_language(complement_approx(aut_eq(), 1), 3)
            == enumerate_language(complement(aut_eq()), 3))
    U = union(aut_anyX(), aut_anyY())
    assert enumerate_language(complement_approx(U, 1), 3) >= bounded_complement(U, 3)
    empty = MultiTapeAutomaton.build(("a", "b"), ("X", "Y"), {0: "X"}, [], {0}, [])
    assert enumerate_language(complement_approx(empty, 0), 2) == bounded_universe("ab", ("X", "Y"), 2)


def test_last_is_nondeterministic_and_approximated():
    A = aut_last()
    assert not is_deterministic(A)
    full = enumerate_language(A, 3)
    for b in (0, 1, 2):
        assert enumerate_language(determinize_approx(A, b), 3) <= full


def test_negative_bound():
    with pytest.raises(AutomatonError):
        determinize_approx(aut_eq(), -1)


@pytest.fixture(scope="module")
def nondeterministic_samples():
    rng = random.Random(21)
    out = []
    while len(out) < 40:
        tapes = tuple("XYZ"[:rng.randint(1, 3)])
        A = random_automaton(rng, tapes, rng.randint(1, 5), deterministic=False)
        if not is_deterministic(A):
            out.append(A)
    return out


def test_random_under_approximation_and_duality(nondeterministic_samples):
    for A in nondeterministic_samples:
        LA = enumerate_language(A, 3)
        for b in (0, 1, 2):
            D = determinize_approx(A, b)
            assert is_deterministic(D) and validate(D) == []
            LD = enumerate_language(D, 3)
            assert LD <= LA
            universe = bounded_universe(A.alphabet, A.tapes, 3)
            assert enumerate_language(complement_approx(A, b), 3) == universe - LD


def test_monotone_with_a_single_choice():
    # unions of deterministic automata choose once, at the start
    rng = random.Random(8)
    for _ in range(30):
        tapes = tuple("XY"[:rng.randint(1, 2)])
        A = union(random_automaton(rng, tapes, rng.randint(1, 4)),
                  random_automaton(rng, tapes, rng.randint(1, 4)))
        prev = set()
        for b in range(4):
            cur = enumerate_language(determinize_approx(A, b), 3)
            assert prev <= cur
            prev = cur


NON_MONOTONE = """\
alphabet a b
tapes X
state 0 tape X initial
state 1 final
state 2 tape X
trans 0 a 0
trans 0 a 1
trans 0 b 0
trans 0 b 2
trans 2 a 0
trans 2 a 2
trans 2 b 0
"""


def test_nested_choices_can_break_monotonicity():
    # the choice on 'a' is met while the 'b' alternative is pending, so its
    # accepting branch is dropped; a longer window makes that happen later
    A = parse_automaton(NON_MONOTONE)
    L2 = enumerate_language(determinize_approx(A, 2), 3)
    L3 = enumerate_language(determinize_approx(A, 3), 3)
    assert NWord(X="baa") in L2 - L3
    assert L2 | L3 <= enumerate_language(A, 3)
