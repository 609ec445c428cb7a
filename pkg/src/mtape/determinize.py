"""Approximate determinization by bounded backtracking, and the complement it yields.

At a nondeterministic choice the deterministic machine follows the first
branch (lowest target id) for up to ``bound`` fresh input symbols, keeping
those symbols in a buffer. If the first branch accepts in time, so does
the machine. Otherwise it falls back to the second branch, replays the
buffered symbols on it, and continues normally.

Only one alternative is ever pending. A choice met while one is pending,
or while replayed input is still buffered, takes the first branch and
forgets the others. The result accepts a subset of the original language.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .automaton import (
    END,
    AutomatonError,
    MultiTapeAutomaton,
    Transition,
    check,
    complement,
)

Buffers = tuple[str, ...]


class BacktrackState(NamedTuple):
    active: int
    buffers: Buffers            # input already read but not yet consumed by ``active``
    pending: tuple[int, Buffers] | None
    steps_since_choice: int


class _Builder:
    def __init__(self, A: MultiTapeAutomaton, bound: int):
        self.A = A
        self.bound = bound
        self.slot = {t: i for i, t in enumerate(A.tapes)}
        self.empty: Buffers = tuple("" for _ in A.tapes)

    def advance(self, q: int, bufs: Buffers, pending, steps: int) -> BacktrackState | None:
        """Run ``q`` over buffered input until it needs fresh input, accepts, or dies."""
        A = self.A
        while q not in A.final:
            if not A.outgoing.get(q):
                break
            i = self.slot[A.tape_of[q]]
            if not bufs[i]:
                if pending is not None and steps >= self.bound:
                    return self.fall_back(pending)
                return BacktrackState(q, bufs, pending, steps)
            sym = bufs[i][0]
            bufs = bufs[:i] + (bufs[i][1:],) + bufs[i + 1:]
            targets = sorted(A.next_states(q, sym))
            if not targets:
                break
            if len(targets) > 1 and pending is None and not any(bufs):
                pending, steps = (targets[1], bufs), 0
            q = targets[0]
        else:
            return BacktrackState(q, self.empty, None, 0)
        # the active branch died
        return self.fall_back(pending) if pending is not None else None

    def fall_back(self, pending: tuple[int, Buffers]) -> BacktrackState | None:
        return self.advance(pending[0], pending[1], None, 0)

    def start(self) -> BacktrackState | None:
        inits = sorted(self.A.initial)
        if not inits:
            return None
        pending = (inits[1], self.empty) if len(inits) > 1 else None
        return self.advance(inits[0], self.empty, pending, 0)

    def step(self, s: BacktrackState, sym: str) -> BacktrackState | None:
        A = self.A
        i = self.slot[A.tape_of[s.active]]
        pending = s.pending
        if pending is not None:
            q2, bufs2 = pending
            pending = (q2, bufs2[:i] + (bufs2[i] + sym,) + bufs2[i + 1:])
        targets = sorted(A.next_states(s.active, sym))
        if not targets:
            return self.fall_back(pending) if pending is not None else None
        if len(targets) > 1 and pending is None and not any(s.buffers):
            return self.advance(targets[0], s.buffers, (targets[1], s.buffers), 0)
        steps = s.steps_since_choice + 1 if pending is not None else 0
        return self.advance(targets[0], s.buffers, pending, steps)


def determinize_approx(A: MultiTapeAutomaton, bound: int) -> MultiTapeAutomaton:
    """A deterministic automaton accepting a subset of L(A), exploring choices ``bound`` symbols deep."""
    check(A)
    if bound < 0:
        raise AutomatonError("bound must be nonnegative")
    builder = _Builder(A, bound)
    ids: dict[BacktrackState, int] = {}
    queue: deque[BacktrackState] = deque()

    def node(s: BacktrackState) -> int:
        if s not in ids:
            ids[s] = len(ids)
            queue.append(s)
        return ids[s]

    start = builder.start()
    initial = set() if start is None else {node(start)}
    tape_of: dict[int, str] = {}
    transitions: list[Transition] = []
    final: set[int] = set()
    while queue:
        s = queue.popleft()
        me = ids[s]
        if s.active in A.final:
            final.add(me)
            continue
        tape_of[me] = A.tape_of[s.active]
        for sym in A.alphabet + (END,):
            nxt = builder.step(s, sym)
            if nxt is not None:
                transitions.append((me, sym, node(nxt)))
    return MultiTapeAutomaton(A.alphabet, A.tapes, tuple(ids.values()), tape_of,
                              tuple(transitions), frozenset(initial), frozenset(final),
                              name=f"det{bound}({A.name})" if A.name else "")


def complement_approx(A: MultiTapeAutomaton, bound: int) -> MultiTapeAutomaton:
    """Complement of :func:`determinize_approx`; accepts a superset of the true complement."""
    return complement(determinize_approx(A, bound))
