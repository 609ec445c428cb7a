"""Word encodings of naturals, sequence elements and sequences over {a, b, #}.

naturals are unary (``aaa`` is 3), elements are words over {a, b}, and a
sequence is the concatenation of its elements each followed by ``#``.
"""

from __future__ import annotations

from collections.abc import Sequence

from .automaton import TapeChecker

SIGMA = ("a", "b", "#")
SEP = "#"

NAT, ELEM, SEQ = "nat", "elem", "seq"
SORTS = (NAT, ELEM, SEQ)


class DecodeError(ValueError):
    pass


def encode_nat(n: int) -> str:
    if n < 0:
        raise ValueError("naturals only")
    return "a" * n


def decode_nat(word: str) -> int:
    if set(word) - {"a"}:
        raise DecodeError(f"{word!r} is not a unary natural")
    return len(word)


def encode_elem(e: str) -> str:
    if set(e) - {"a", "b"}:
        raise ValueError(f"{e!r} is not an element over {{a, b}}")
    return e


def decode_elem(word: str) -> str:
    if set(word) - {"a", "b"}:
        raise DecodeError(f"{word!r} is not an element")
    return word


def encode_seq(items: Sequence[str]) -> str:
    return "".join(encode_elem(e) + SEP for e in items)


def decode_seq(word: str) -> list[str]:
    if word and not word.endswith(SEP):
        raise DecodeError(f"{word!r} does not end with {SEP}")
    parts = word.split(SEP)[:-1]
    return [decode_elem(p) for p in parts]


ENCODERS = {NAT: encode_nat, ELEM: encode_elem, SEQ: encode_seq}
DECODERS = {NAT: decode_nat, ELEM: decode_elem, SEQ: decode_seq}

CHECKERS = {
    NAT: TapeChecker(0, {(0, "a"): 0}, frozenset({0})),
    ELEM: TapeChecker(0, {(0, "a"): 0, (0, "b"): 0}, frozenset({0})),
    # 0: between elements, 1: inside an element
    SEQ: TapeChecker(0, {(0, "a"): 1, (0, "b"): 1, (0, "#"): 0,
                         (1, "a"): 1, (1, "b"): 1, (1, "#"): 0}, frozenset({0})),
}
