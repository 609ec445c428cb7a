"""Delay-bounded under-approximation of the intersection of two multi-tape automata.

The two components advance together on shared tapes and independently on
the others. A component may run ahead on a tape the intersection is not
currently reading; the transitions it takes are queued per tape as delays
and matched later, first in first out. Compound states whose queues grow
past ``max_delay`` are dropped, so the result accepts a subset of the true
intersection.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from typing import NamedTuple

from .automaton import (
    END,
    AutomatonError,
    MultiTapeAutomaton,
    Transition,
    check,
)

log = logging.getLogger(__name__)

DelaySequence = tuple[Transition, ...]

PATH_MODES = ("shortest", "acyclic")


class DelayedState(NamedTuple):
    """A component state plus one FIFO delay queue per tape (in the automaton's tape order)."""

    state: int
    delays: tuple[DelaySequence, ...]


class CompoundState(NamedTuple):
    a_state: int
    b_state: int
    tape: str
    a_delays: tuple[DelaySequence, ...]
    b_delays: tuple[DelaySequence, ...]

    def max_delay(self) -> int:
        return max((len(d) for d in self.a_delays + self.b_delays), default=0)

    def sort_key(self, tape_rank: dict[str, int]):
        syms = lambda ds: tuple(tuple(s for _, s, _ in d) for d in ds)  # noqa: E731
        return (self.a_state, self.b_state, tape_rank[self.tape],
                syms(self.a_delays), syms(self.b_delays), self.a_delays, self.b_delays)


def symbols_of(delays: DelaySequence) -> tuple[str, ...]:
    return tuple(sym for _, sym, _ in delays)


def consistent(h: DelaySequence, k: DelaySequence) -> bool:
    """True iff the symbols of one queue are a prefix of the other's."""
    a, b = symbols_of(h), symbols_of(k)
    n = min(len(a), len(b))
    return a[:n] == b[:n]


def _paths_to_tape(D: MultiTapeAutomaton, q: int, tape: str, mode: str) -> list[list[Transition]]:
    """Paths from ``q`` that stop at the first state reading ``tape``."""
    targets_of = lambda s: D.tape_of.get(s) == tape  # noqa: E731
    if mode == "acyclic":
        found: list[list[Transition]] = []

        def walk(s: int, path: list[Transition], on_path: set[int]) -> None:
            for tr in D.outgoing.get(s, ()):
                r = tr[2]
                if r in on_path:
                    continue
                if targets_of(r):
                    found.append(path + [tr])
                elif r in D.tape_of:
                    walk(r, path + [tr], on_path | {r})

        walk(q, [], {q})
        return found
    if mode != "shortest":
        raise AutomatonError(f"unknown path mode {mode!r}")
    # breadth-first layers; target states are never expanded further
    dist = {q: 0}
    order = deque([q])
    while order:
        s = order.popleft()
        if s != q and targets_of(s):
            continue
        for _, _, r in D.outgoing.get(s, ()):
            if r not in dist:
                dist[r] = dist[s] + 1
                order.append(r)
    into: dict[int, list[Transition]] = {}
    for tr in D.transitions:
        s, _, r = tr
        if s in dist and r in dist and dist[r] == dist[s] + 1 and (s == q or not targets_of(s)):
            into.setdefault(r, []).append(tr)

    def back(r: int) -> list[list[Transition]]:
        if r == q:
            return [[]]
        return [p + [tr] for tr in into.get(r, ()) for p in back(tr[0])]

    return [p for r in sorted(dist) if r != q and targets_of(r) for p in back(r)]


def async_next(D: MultiTapeAutomaton, q: int, mode: str = "shortest") -> list[DelayedState]:
    """Delayed states reachable from ``q``: q itself, then one per path to a first state of each other tape."""
    if q not in D.states:
        raise AutomatonError(f"unknown state {q}")
    empty = tuple(() for _ in D.tapes)
    result = [DelayedState(q, empty)]
    if q in D.final:
        return result
    slot = {t: i for i, t in enumerate(D.tapes)}
    own = D.tape_of[q]
    seen = {result[0]}
    for tape in D.tapes:
        if tape == own:
            continue
        for path in _paths_to_tape(D, q, tape, mode):
            delays = [[] for _ in D.tapes]
            for tr in path:
                delays[slot[D.tape_of[tr[0]]]].append(tr)
            ds = DelayedState(path[-1][2], tuple(tuple(d) for d in delays))
            if ds not in seen:
                seen.add(ds)
                result.append(ds)
    return result


class Intersector:
    """Work-stack construction of the compound automaton.

    Exposes the building blocks (``new_states``, ``compose_transition``) so
    they can be driven step by step; :meth:`run` is the full loop.
    """

    def __init__(
        self,
        A: MultiTapeAutomaton,
        B: MultiTapeAutomaton,
        max_states: int | None = None,
        max_delay: int | None = None,
        stop_on_accept: bool = False,
        paths: str = "shortest",
    ):
        check(A)
        check(B)
        if set(A.alphabet) != set(B.alphabet):
            raise AutomatonError(f"alphabet mismatch: {A.alphabet} vs {B.alphabet}")
        if paths not in PATH_MODES:
            raise AutomatonError(f"unknown path mode {paths!r}")
        self.A, self.B = A, B
        self.max_states = max_states
        self.max_delay = max_delay
        self.stop_on_accept = stop_on_accept
        self.paths = paths
        self.tapes = A.tapes + tuple(t for t in B.tapes if t not in A.tapes)
        self.shared = [t for t in A.tapes if t in B.tapes]
        self._rank = {t: i for i, t in enumerate(self.tapes)}
        self._a_slot = {t: i for i, t in enumerate(A.tapes)}
        self._b_slot = {t: i for i, t in enumerate(B.tapes)}
        self._shared_slots = [(self._a_slot[t], self._b_slot[t]) for t in self.shared]
        self._cache: dict[tuple[str, int], list[DelayedState]] = {}

        self.states: dict[CompoundState, int] = {}
        self.seen: set[CompoundState] = set()
        self.stack: list[CompoundState] = []
        self.transitions: list[tuple[CompoundState, str, CompoundState]] = []
        self.initial: list[CompoundState] = []
        self.discarded = 0
        self.accepting_found: list[CompoundState] = []
        self.truncated = False

    # component helpers

    def _next(self, which: str, q: int) -> list[DelayedState]:
        key = (which, q)
        if key not in self._cache:
            D = self.A if which == "A" else self.B
            self._cache[key] = async_next(D, q, self.paths)
        return self._cache[key]

    def _normal(self, which: str, q: int, tape: str, sym: str) -> list[DelayedState]:
        D = self.A if which == "A" else self.B
        if D.tape_of.get(q) != tape:
            return []
        out: list[DelayedState] = []
        for r in D.next_states(q, sym):
            out.extend(self._next(which, r))
        return out

    def is_final(self, r: CompoundState) -> bool:
        return (r.a_state in self.A.final and r.b_state in self.B.final
                and not any(r.a_delays) and not any(r.b_delays))

    def _within_bound(self, delays: Iterable[DelaySequence]) -> bool:
        return self.max_delay is None or all(len(d) <= self.max_delay for d in delays)

    # the routines of the construction

    def new_states(self, P: Sequence[DelayedState], Q: Sequence[DelayedState]) -> list[CompoundState]:
        """Compose every consistent pair, once per tape; push the unseen ones."""
        S: list[CompoundState] = []
        emitted = set()
        for p in P:
            for q in Q:
                if not all(consistent(p.delays[i], q.delays[j]) for i, j in self._shared_slots):
                    continue
                for t in self.tapes:
                    r = CompoundState(p.state, q.state, t, p.delays, q.delays)
                    if r not in emitted:
                        emitted.add(r)
                        S.append(r)
        S.sort(key=lambda r: r.sort_key(self._rank))
        # pushed in reverse so the smallest key is popped first
        for r in reversed(S):
            if r in self.seen:
                continue
            self.seen.add(r)
            self.stack.append(r)
            if self.is_final(r):
                self.accepting_found.append(r)
        return S

    def compose_transition(
        self,
        P: Sequence[DelayedState],
        Q: Sequence[DelayedState],
        prefix: tuple[tuple[DelaySequence, ...], tuple[DelaySequence, ...]],
        symbol: str,
        r: CompoundState,
    ) -> list[CompoundState]:
        """Prepend the leftover delays to every reached state, then link ``r`` to each result."""
        pa, pb = prefix
        JA = [DelayedState(p.state, tuple(x + y for x, y in zip(pa, p.delays))) for p in P]
        JB = [DelayedState(q.state, tuple(x + y for x, y in zip(pb, q.delays))) for q in Q]
        # states over the delay bound would be discarded on pop; skip them up front
        JA = [p for p in JA if self._within_bound(p.delays)]
        JB = [q for q in JB if self._within_bound(q.delays)]
        S = self.new_states(JA, JB)
        for r2 in S:
            self.transitions.append((r, symbol, r2))
        return S

    def expand(self, r: CompoundState) -> None:
        t = r.tape
        h, k = list(r.a_delays), list(r.b_delays)
        in_a, in_b = t in self._a_slot, t in self._b_slot
        ia, ib = self._a_slot.get(t), self._b_slot.get(t)

        def popped(ds: list[DelaySequence], i: int) -> tuple[DelaySequence, ...]:
            return tuple(d[1:] if j == i else d for j, d in enumerate(ds))

        stay_b = [DelayedState(r.b_state, tuple(() for _ in self.B.tapes))]
        stay_a = [DelayedState(r.a_state, tuple(() for _ in self.A.tapes))]
        if in_a and in_b:
            ht, kt = h[ia], k[ib]
            if ht and kt:
                sym = ht[0][1]
                if kt[0][1] != sym:
                    return
                self.compose_transition(self._next("A", r.a_state), self._next("B", r.b_state),
                                        (popped(h, ia), popped(k, ib)), sym, r)
            elif ht:
                sym = ht[0][1]
                self.compose_transition(self._next("A", r.a_state),
                                        self._normal("B", r.b_state, t, sym),
                                        (popped(h, ia), tuple(k)), sym, r)
            elif kt:
                sym = kt[0][1]
                self.compose_transition(self._normal("A", r.a_state, t, sym),
                                        self._next("B", r.b_state),
                                        (tuple(h), popped(k, ib)), sym, r)
            else:
                # the end marker is read like any other symbol
                for sym in self.A.alphabet + (END,):
                    P = self._normal("A", r.a_state, t, sym)
                    if not P:
                        continue
                    Q = self._normal("B", r.b_state, t, sym)
                    if Q:
                        self.compose_transition(P, Q, (tuple(h), tuple(k)), sym, r)
        elif in_a:
            if h[ia]:
                self.compose_transition(self._next("A", r.a_state), stay_b,
                                        (popped(h, ia), tuple(k)), h[ia][0][1], r)
            else:
                for sym in self.A.alphabet + (END,):
                    P = self._normal("A", r.a_state, t, sym)
                    if P:
                        self.compose_transition(P, stay_b, (tuple(h), tuple(k)), sym, r)
        else:
            if k[ib]:
                self.compose_transition(stay_a, self._next("B", r.b_state),
                                        (tuple(h), popped(k, ib)), k[ib][0][1], r)
            else:
                for sym in self.A.alphabet + (END,):
                    Q = self._normal("B", r.b_state, t, sym)
                    if Q:
                        self.compose_transition(stay_a, Q, (tuple(h), tuple(k)), sym, r)

    def _admit(self, r: CompoundState) -> None:
        self.states[r] = len(self.states)

    def run(self) -> Intersector:
        JA = [d for q in sorted(self.A.initial) for d in self._next("A", q)]
        JB = [d for q in sorted(self.B.initial) for d in self._next("B", q)]
        JA = [p for p in JA if self._within_bound(p.delays)]
        JB = [q for q in JB if self._within_bound(q.delays)]
        self.initial = self.new_states(JA, JB)
        while self.stack:
            if self.stop_on_accept and self.accepting_found:
                for r in self.accepting_found:
                    if r not in self.states:
                        self._admit(r)
                break
            if self.max_states is not None and len(self.states) >= self.max_states:
                self.truncated = True
                break
            r = self.stack.pop()
            if self.max_delay is not None and r.max_delay() > self.max_delay:
                self.discarded += 1
                continue
            self._admit(r)
            self.expand(r)
        if self.stop_on_accept and self.accepting_found:
            for r in self.accepting_found:
                if r not in self.states:
                    self._admit(r)
        log.debug("intersect: %d states, %d on stack, %d discarded",
                  len(self.states), len(self.stack), self.discarded)
        return self

    def automaton(self) -> MultiTapeAutomaton:
        ids = self.states
        final = {ids[r] for r in ids if self.is_final(r)}
        tape_of = {i: r.tape for r, i in ids.items() if i not in final}
        transitions = {(ids[r], s, ids[r2]) for r, s, r2 in self.transitions if r in ids and r2 in ids}
        name = f"({self.A.name} & {self.B.name})" if self.A.name or self.B.name else ""
        return MultiTapeAutomaton(
            self.A.alphabet, self.tapes, tuple(ids.values()), tape_of, tuple(transitions),
            frozenset(ids[r] for r in self.initial if r in ids), frozenset(final), name=name)

    def compound(self) -> dict[int, CompoundState]:
        return {i: r for r, i in self.states.items()}


def intersect(
    A: MultiTapeAutomaton,
    B: MultiTapeAutomaton,
    max_states: int | None = None,
    max_delay: int | None = None,
    stop_on_accept: bool = False,
    paths: str = "shortest",
) -> MultiTapeAutomaton:
    """Under-approximate L(A) ∩ L(B); ``None`` bounds mean unbounded.

    Tapes with the same name are shared. With both bounds unbounded the
    construction need not terminate.
    """
    return Intersector(A, B, max_states, max_delay, stop_on_accept, paths).run().automaton()


def shared_tapes(A: MultiTapeAutomaton, B: MultiTapeAutomaton) -> list[str]:
    return [t for t in A.tapes if t in B.tapes]
