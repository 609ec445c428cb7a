"""Ready-made automata: the worked examples and the predicates of the sequence theory.

Every builder returns a fresh, validated automaton. Tape names are
parameters so instances can be created directly on formula variables.
"""

from __future__ import annotations

from collections.abc import Iterable

from .automaton import END, MultiTapeAutomaton, check
from .encoding import SIGMA

AB = ("a", "b")


def _make(name, alphabet, tapes, tape_of, transitions, initial, final) -> MultiTapeAutomaton:
    return check(MultiTapeAutomaton.build(alphabet, tapes, tape_of, transitions,
                                          initial, final, name=name))


def aut_eq(X: str = "X", Y: str = "Y", alphabet: Iterable[str] = AB) -> MultiTapeAutomaton:
    """Pairs of equal words: read a symbol on X, then the same symbol on Y."""
    alphabet = tuple(alphabet)
    k = len(alphabet)
    tape_of = {1: X, k + 2: Y}
    trans = [(1, END, k + 2), (k + 2, END, k + 3)]
    for i, sym in enumerate(alphabet):
        s = i + 2
        tape_of[s] = Y
        trans += [(1, sym, s), (s, sym, 1)]
    return _make("eq", alphabet, (X, Y), tape_of, trans, {1}, {k + 3})


def aut_cat(X: str = "X", Y: str = "Y", Z: str = "Z", alphabet: Iterable[str] = AB) -> MultiTapeAutomaton:
    """Z is the concatenation of X and Y: copy X onto Z, then Y onto Z."""
    alphabet = tuple(alphabet)
    k = len(alphabet)
    y_state, z_end, fin = k + 2, 2 * k + 3, 2 * k + 4
    tape_of = {1: X, y_state: Y, z_end: Z}
    trans = [(1, END, y_state), (y_state, END, z_end), (z_end, END, fin)]
    for i, sym in enumerate(alphabet):
        sx, sy = i + 2, k + 3 + i
        tape_of[sx] = tape_of[sy] = Z
        trans += [(1, sym, sx), (sx, sym, 1), (y_state, sym, sy), (sy, sym, y_state)]
    return _make("cat", alphabet, (X, Y, Z), tape_of, trans, {1}, {fin})


def aut_anyX(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """⟨aᵐ, aⁿ⟩, reading all of X before Y."""
    return _make("anyX", ("a",), (X, Y), {1: X, 2: Y},
                 [(1, "a", 1), (1, END, 2), (2, "a", 2), (2, END, 3)], {1}, {3})


def aut_anyY(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """⟨aᵐ, aⁿ⟩, reading all of Y before X."""
    return _make("anyY", ("a",), (X, Y), {1: Y, 2: X},
                 [(1, "a", 1), (1, END, 2), (2, "a", 2), (2, END, 3)], {1}, {3})


def aut_L1(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """⟨ab(cab)ⁿc, a(bc)ⁿabca⟩."""
    tape_of = {1: X, 2: X, 3: Y, 4: X, 5: X, 6: X, 7: Y, 8: Y,
               9: Y, 10: Y, 11: Y, 12: Y, 13: Y}
    trans = [
        (1, "a", 2), (2, "b", 3), (3, "a", 4),
        (4, "c", 5),
        (5, "a", 6), (6, "b", 7), (7, "b", 8), (8, "c", 4),
        (5, END, 9), (9, "a", 10), (10, "b", 11), (11, "c", 12), (12, "a", 13), (13, END, 14),
    ]
    return _make("L1", ("a", "b", "c"), (X, Y), tape_of, trans, {1}, {14})


def aut_L2(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """⟨(abc)ⁿ, a(bca)ⁿ⟩."""
    tape_of = {1: Y, 2: X, 3: X, 4: X, 5: Y, 6: Y, 7: Y, 8: Y}
    trans = [
        (1, "a", 2),
        (2, "a", 3), (3, "b", 4), (4, "c", 5), (5, "b", 6), (6, "c", 7), (7, "a", 2),
        (2, END, 8), (8, END, 9),
    ]
    return _make("L2", ("a", "b", "c"), (X, Y), tape_of, trans, {1}, {9})


XYZ = ("a", "b", "x", "y", "z")


def aut_L3(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """⟨abⁿ, xyⁿz⟩."""
    tape_of = {1: X, 2: Y, 3: X, 4: Y, 5: Y, 6: Y}
    trans = [(1, "a", 2), (2, "x", 3), (3, "b", 4), (4, "y", 3),
             (3, END, 5), (5, "z", 6), (6, END, 7)]
    return _make("L3", XYZ, (X, Y), tape_of, trans, {1}, {7})


def aut_L4(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """⟨aⁿb, xyⁿz⟩."""
    tape_of = {1: Y, 2: X, 3: Y, 4: X, 5: Y, 6: Y}
    trans = [(1, "x", 2), (2, "a", 3), (3, "y", 2), (2, "b", 4),
             (4, END, 5), (5, "z", 6), (6, END, 7)]
    return _make("L4", XYZ, (X, Y), tape_of, trans, {1}, {7})


# predicates of the sequence theory, over {a, b, #}; every builder also
# rejects words that are not well-formed encodings of its argument sorts


def aut_len(X: str = "X", N: str = "N") -> MultiTapeAutomaton:
    """The sequence on X has at least as many elements as the natural on N."""
    tape_of = {0: N, 1: X, 2: X, 3: X}
    trans = [
        (0, "a", 1), (1, "a", 1), (1, "b", 1), (1, "#", 0),
        (0, END, 2), (2, "a", 3), (2, "b", 3), (2, "#", 2), (2, END, 4),
        (3, "a", 3), (3, "b", 3), (3, "#", 2),
    ]
    return _make("len", SIGMA, (X, N), tape_of, trans, {0}, {4})


def aut_size(X: str = "X", N: str = "N") -> MultiTapeAutomaton:
    """The sequence on X has exactly as many elements as the natural on N."""
    tape_of = {0: N, 1: X, 2: X}
    trans = [(0, "a", 1), (1, "a", 1), (1, "b", 1), (1, "#", 0),
             (0, END, 2), (2, END, 3)]
    return _make("size", SIGMA, (X, N), tape_of, trans, {0}, {3})


def aut_rest(X: str = "X", Y: str = "Y") -> MultiTapeAutomaton:
    """Y is X without its first element; X must be nonempty."""
    # 1: X at an element boundary, 2: X inside an element
    tape_of = {0: X, 1: X, 2: X, 3: Y, 4: Y, 5: Y, 6: Y}
    trans = [
        (0, "a", 0), (0, "b", 0), (0, "#", 1),
        (1, "a", 3), (1, "b", 4), (1, "#", 5), (1, END, 6),
        (2, "a", 3), (2, "b", 4), (2, "#", 5),
        (3, "a", 2), (4, "b", 2), (5, "#", 1), (6, END, 7),
    ]
    return _make("rest", SIGMA, (X, Y), tape_of, trans, {0}, {7})


def aut_dec(M: str = "M", N: str = "N") -> MultiTapeAutomaton:
    """M is one less than N (both unary)."""
    tape_of = {0: N, 1: M, 2: N, 3: N}
    trans = [(0, "a", 1), (1, "a", 2), (2, "a", 1), (1, END, 3), (3, END, 4)]
    return _make("dec", SIGMA, (M, N), tape_of, trans, {0}, {4})


def aut_zero(N: str = "N") -> MultiTapeAutomaton:
    """The natural on N is 0."""
    return _make("zero", SIGMA, (N,), {0: N}, [(0, END, 1)], {0}, {1})


def aut_sub(Y: str = "Y", M: str = "M", U: str = "U") -> MultiTapeAutomaton:
    """U equals the length of sequence Y minus M, with M no larger than that length."""
    tape_of = {0: M, 1: Y, 2: U, 3: Y, 4: Y}
    trans = [
        (0, "a", 1), (1, "a", 1), (1, "b", 1), (1, "#", 0),
        (0, END, 2), (2, "a", 3), (3, "a", 3), (3, "b", 3), (3, "#", 2),
        (2, END, 4), (4, END, 5),
    ]
    return _make("sub", SIGMA, (Y, M, U), tape_of, trans, {0}, {5})


def aut_last(Z: str = "Z", U: str = "U") -> MultiTapeAutomaton:
    """U is the last element of the sequence Z (the empty element when Z is empty).

    Nondeterministic: the automaton guesses which element is the last one.
    """
    # 8: start of Z, 0: later element boundary, 1: skipping an element,
    # 2: comparing an element, 3/4: U must match a/b, 5: compared element
    # closed so Z must end, 6: U must end
    tape_of = {8: Z, 0: Z, 1: Z, 2: Z, 3: U, 4: U, 5: Z, 6: U}
    trans = [(8, END, 6), (5, END, 6), (6, END, 7),
             (1, "a", 1), (1, "b", 1), (1, "#", 0),
             (2, "a", 3), (2, "b", 4), (2, "#", 5),
             (3, "a", 2), (4, "b", 2)]
    for s in (8, 0):
        trans += [(s, "a", 1), (s, "b", 1), (s, "#", 0),
                  (s, "a", 3), (s, "b", 4), (s, "#", 5)]
    return _make("last", SIGMA, (Z, U), tape_of, trans, {8}, {7})
