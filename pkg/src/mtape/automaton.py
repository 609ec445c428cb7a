"""Multi-tape automata: data model, simulation, and the exact closure operations.

States read one tape each; ``$`` is the end marker appended to every tape.
A run accepts as soon as it enters a final state, whatever input is left.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

END = "$"

Transition = tuple[int, str, int]


class AutomatonError(ValueError):
    """Raised when an automaton or its arguments violate an operation's contract."""


class NWord(Mapping):
    """An assignment of one finite word per tape. Hashable and immutable."""

    __slots__ = ("_items",)

    def __init__(self, words: Mapping[str, str] | Iterable[tuple[str, str]] = (), **kw: str):
        items = dict(words, **kw)
        for tape, word in items.items():
            if END in word:
                raise AutomatonError(f"word on tape {tape!r} contains the end marker")
        self._items = tuple(sorted(items.items()))

    def __getitem__(self, tape: str) -> str:
        for key, word in self._items:
            if key == tape:
                return word
        raise KeyError(tape)

    def __iter__(self) -> Iterator[str]:
        return (key for key, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return hash(self._items)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NWord):
            return self._items == other._items
        if isinstance(other, Mapping):
            return dict(self._items) == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}:{w or 'ε'}" for k, w in self._items)
        return f"⟨{inner}⟩"

    def project(self, tapes: Iterable[str]) -> NWord:
        return NWord((t, self[t]) for t in tapes)


@dataclass(frozen=True)
class Configuration:
    state: int
    remaining: Mapping[str, str]


@dataclass(frozen=True)
class RunWitness:
    configurations: tuple[Configuration, ...]
    accepted: bool


@dataclass(frozen=True)
class Violation:
    invariant: str
    detail: str

    def __str__(self) -> str:
        return f"{self.invariant}: {self.detail}"


@dataclass(frozen=True, eq=True)
class MultiTapeAutomaton:
    """An n-tape automaton ⟨Σ, Q, δ, Q₀, F, T, τ⟩ with integer state ids.

    ``tape_of`` maps every non-final state to the tape it reads; final
    states carry no tape. ``transitions`` is the relation δ as sorted
    ``(source, symbol, target)`` triples.
    """

    alphabet: tuple[str, ...]
    tapes: tuple[str, ...]
    states: tuple[int, ...]
    tape_of: Mapping[int, str]
    transitions: tuple[Transition, ...]
    initial: frozenset[int]
    final: frozenset[int]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.alphabet:
            raise AutomatonError("alphabet must be nonempty")
        if END in self.alphabet:
            raise AutomatonError("the end marker cannot be an alphabet symbol")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError("duplicate alphabet symbols")
        if len(set(self.tapes)) != len(self.tapes):
            raise AutomatonError("duplicate tape names")
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "tapes", tuple(self.tapes))
        object.__setattr__(self, "states", tuple(sorted(set(self.states))))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        tape_of = {q: t for q, t in dict(self.tape_of).items() if q not in self.final}
        object.__setattr__(self, "tape_of", dict(sorted(tape_of.items())))
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions))))

    @classmethod
    def build(
        cls,
        alphabet: Iterable[str],
        tapes: Iterable[str],
        tape_of: Mapping[int, str],
        transitions: Iterable[Transition],
        initial: Iterable[int],
        final: Iterable[int],
        name: str = "",
    ) -> MultiTapeAutomaton:
        """Convenience constructor; the state set is inferred from every argument."""
        transitions = list(transitions)
        initial, final = set(initial), set(final)
        states = set(tape_of) | initial | final
        for p, _, q in transitions:
            states.update((p, q))
        return cls(tuple(alphabet), tuple(tapes), tuple(states), dict(tape_of),
                   tuple(transitions), frozenset(initial), frozenset(final), name)

    @property
    def symbols(self) -> tuple[str, ...]:
        """The extended alphabet Σ ∪ {$}."""
        return self.alphabet + (END,)

    @cached_property
    def successors(self) -> dict[int, dict[str, tuple[int, ...]]]:
        out: dict[int, dict[str, list[int]]] = {q: {} for q in self.states}
        for p, sym, q in self.transitions:
            out.setdefault(p, {}).setdefault(sym, []).append(q)
        return {p: {s: tuple(qs) for s, qs in m.items()} for p, m in out.items()}

    @cached_property
    def outgoing(self) -> dict[int, tuple[Transition, ...]]:
        out: dict[int, list[Transition]] = {q: [] for q in self.states}
        for tr in self.transitions:
            out.setdefault(tr[0], []).append(tr)
        return {q: tuple(ts) for q, ts in out.items()}

    def next_states(self, state: int, symbol: str) -> tuple[int, ...]:
        return self.successors.get(state, {}).get(symbol, ())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return (f"<MultiTapeAutomaton{label}: tapes={','.join(self.tapes)} "
                f"|Q|={len(self.states)} |δ|={len(self.transitions)}>")


def _exhaustion_closure(A: MultiTapeAutomaton) -> set[tuple[int, frozenset[str]]]:
    """Pairs (state, tapes whose ``$`` was read) reachable from the initial states."""
    start = {(q, frozenset()) for q in A.initial}
    seen = set(start)
    work = list(start)
    while work:
        q, done = work.pop()
        for _, sym, r in A.outgoing.get(q, ()):
            nxt = done | {A.tape_of[q]} if sym == END and q in A.tape_of else done
            if (r, nxt) not in seen:
                seen.add((r, nxt))
                work.append((r, nxt))
    return seen


def validate(A: MultiTapeAutomaton) -> list[Violation]:
    """Check the structural conventions; returns the violations found (empty if none)."""
    problems: list[Violation] = []
    states = set(A.states)
    symbols = set(A.symbols)
    for q in sorted(A.initial - states):
        problems.append(Violation("initial-subset", f"initial state {q} is not a state"))
    for q in sorted(A.final - states):
        problems.append(Violation("final-subset", f"final state {q} is not a state"))
    for p, sym, q in A.transitions:
        if p not in states or q not in states:
            problems.append(Violation("transition-states", f"({p}, {sym}, {q}) names an unknown state"))
        if sym not in symbols:
            problems.append(Violation("transition-symbol", f"({p}, {sym}, {q}) reads a symbol outside Σ ∪ {{$}}"))
        if p in A.final:
            problems.append(Violation("final-no-outgoing", f"final state {p} has outgoing transition ({p}, {sym}, {q})"))
    for q in A.states:
        if q in A.final:
            continue
        tape = A.tape_of.get(q)
        if tape is None:
            problems.append(Violation("tape-assignment", f"non-final state {q} has no tape"))
        elif tape not in A.tapes:
            problems.append(Violation("tape-assignment", f"state {q} reads unknown tape {tape!r}"))
    if any(v.invariant == "tape-assignment" for v in problems):
        return problems
    # a state that has no way out can never read, so only live states count
    reported = set()
    for q, done in sorted(_exhaustion_closure(A), key=lambda x: (x[0], sorted(x[1]))):
        tape = A.tape_of.get(q)
        if tape in done and A.outgoing.get(q) and q not in reported:
            reported.add(q)
            problems.append(Violation(
                "no-read-past-end",
                f"state {q} reads tape {tape} on a path that already read its end marker"))
    return problems


def check(A: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Raise if ``A`` is malformed. The verdict is cached on the instance."""
    problems = A.__dict__.get("_violations")
    if problems is None:
        problems = A.__dict__["_violations"] = validate(A)
    if problems:
        raise AutomatonError("invalid automaton: " + "; ".join(map(str, problems)))
    return A


def _check_word(A: MultiTapeAutomaton, x: Mapping[str, str]) -> NWord:
    x = x if isinstance(x, NWord) else NWord(x)
    if set(x) != set(A.tapes):
        raise AutomatonError(f"word tapes {sorted(x)} do not match automaton tapes {sorted(A.tapes)}")
    return x


def accepting_run(A: MultiTapeAutomaton, x: Mapping[str, str]) -> RunWitness | None:
    """Return an accepting run on ``x`` or None. Depth-first over (state, head positions)."""
    check(A)
    x = _check_word(A, x)
    tapes = A.tapes
    inputs = [x[t] + END for t in tapes]
    index = {t: i for i, t in enumerate(tapes)}
    dead: set[tuple[int, tuple[int, ...]]] = set()

    def search(q: int, pos: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]] | None:
        if q in A.final:
            return [(q, pos)]
        if (q, pos) in dead:
            return None
        i = index[A.tape_of[q]]
        if pos[i] < len(inputs[i]):
            sym = inputs[i][pos[i]]
            moved = pos[:i] + (pos[i] + 1,) + pos[i + 1:]
            for r in A.next_states(q, sym):
                rest = search(r, moved)
                if rest is not None:
                    return [(q, pos)] + rest
        dead.add((q, pos))
        return None

    start = tuple(0 for _ in tapes)
    for q0 in sorted(A.initial):
        path = search(q0, start)
        if path is not None:
            configs = tuple(
                Configuration(q, {t: inputs[i][p[i]:] for i, t in enumerate(tapes)})
                for q, p in path)
            return RunWitness(configs, True)
    return None


def accepts(A: MultiTapeAutomaton, x: Mapping[str, str]) -> bool:
    return accepting_run(A, x) is not None


def replay(A: MultiTapeAutomaton, run: RunWitness) -> bool:
    """Check a run against the successor relation; True iff it is a valid accepting run."""
    configs = run.configurations
    if not configs or configs[0].state not in A.initial:
        return False
    if any(not w.endswith(END) for w in configs[0].remaining.values()):
        return False
    for before, after in zip(configs, configs[1:]):
        tape = A.tape_of.get(before.state)
        word = before.remaining.get(tape, "")
        if tape is None or not word:
            return False
        if after.state not in A.next_states(before.state, word[0]):
            return False
        for t in A.tapes:
            expect = word[1:] if t == tape else before.remaining[t]
            if after.remaining[t] != expect:
                return False
    return run.accepted == (configs[-1].state in A.final)


def is_deterministic(A: MultiTapeAutomaton) -> bool:
    if len(A.initial) > 1:
        return False
    return all(len(qs) <= 1 for m in A.successors.values() for qs in m.values())


def _shortest_accepting_path(A: MultiTapeAutomaton) -> list[Transition] | None:
    parent: dict[int, Transition | None] = {}
    queue = deque()
    for q in sorted(A.initial):
        parent[q] = None
        queue.append(q)
    while queue:
        q = queue.popleft()
        if q in A.final:
            path = []
            while parent[q] is not None:
                tr = parent[q]
                path.append(tr)
                q = tr[0]
            return path[::-1]
        for tr in A.outgoing.get(q, ()):
            if tr[2] not in parent:
                parent[tr[2]] = tr
                queue.append(tr[2])
    return None


def decode_path(A: MultiTapeAutomaton, path: Iterable[Transition]) -> NWord:
    """The n-word read along a transition path, with end markers dropped."""
    words = {t: [] for t in A.tapes}
    for p, sym, _ in path:
        if sym != END:
            words[A.tape_of[p]].append(sym)
    return NWord({t: "".join(w) for t, w in words.items()})


def witness(A: MultiTapeAutomaton) -> NWord | None:
    """A word accepted by ``A`` decoded from a shortest accepting path, or None if empty."""
    check(A)
    path = _shortest_accepting_path(A)
    return None if path is None else decode_path(A, path)


def is_empty(A: MultiTapeAutomaton) -> bool:
    return witness(A) is None


def _require_compatible(A: MultiTapeAutomaton, B: MultiTapeAutomaton) -> None:
    if set(A.alphabet) != set(B.alphabet):
        raise AutomatonError(f"alphabet mismatch: {A.alphabet} vs {B.alphabet}")
    if set(A.tapes) != set(B.tapes):
        raise AutomatonError(f"tape-set mismatch: {A.tapes} vs {B.tapes}")


def union(A: MultiTapeAutomaton, B: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Disjoint union of the transition graphs; B's ids are shifted past A's."""
    _require_compatible(A, B)
    shift = max(A.states) + 1 - min(B.states) if A.states and B.states else 0
    move = lambda q: q + shift  # noqa: E731
    return MultiTapeAutomaton(
        A.alphabet, A.tapes,
        A.states + tuple(move(q) for q in B.states),
        {**A.tape_of, **{move(q): t for q, t in B.tape_of.items()}},
        A.transitions + tuple((move(p), s, move(q)) for p, s, q in B.transitions),
        A.initial | {move(q) for q in B.initial},
        A.final | {move(q) for q in B.final},
        name=f"({A.name} | {B.name})" if A.name or B.name else "",
    )


_DRAIN = -1


def complement(A: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Exact complement of a deterministic automaton.

    The automaton is first completed: states remember which tapes are
    exhausted, and every missing move falls into a drain that reads the
    remaining tapes (in tape order) up to their end markers. The drain's
    all-exhausted state is the only accepting state of the result.
    """
    check(A)
    if not is_deterministic(A):
        raise AutomatonError("complement requires a deterministic automaton")
    ids: dict[tuple[int, frozenset[str]], int] = {}
    tape_of: dict[int, str] = {}
    transitions: list[Transition] = []
    final: set[int] = set()
    queue: deque[tuple[int, frozenset[str]]] = deque()

    def node(q: int, done: frozenset[str]) -> int:
        # a stuck state whose tape is already exhausted behaves like the drain
        if q != _DRAIN and q not in A.final and A.tape_of[q] in done:
            q = _DRAIN
        key = (q, done)
        if key not in ids:
            ids[key] = len(ids)
            queue.append(key)
        return ids[key]

    initial = {node(q, frozenset()) for q in A.initial} or {node(_DRAIN, frozenset())}
    while queue:
        key = queue.popleft()
        q, done = key
        me = ids[key]
        if q == _DRAIN:
            pending = [t for t in A.tapes if t not in done]
            if not pending:
                final.add(me)
                continue
            tape = pending[0]
            tape_of[me] = tape
            for sym in A.alphabet:
                transitions.append((me, sym, me))
            transitions.append((me, END, node(_DRAIN, done | {tape})))
            continue
        if q in A.final:
            # rejecting and dead now; any tape will do
            tape_of[me] = A.tapes[0]
            continue
        tape = A.tape_of[q]
        tape_of[me] = tape
        for sym in A.symbols:
            after = done | {tape} if sym == END else done
            targets = A.next_states(q, sym)
            target = targets[0] if targets else _DRAIN
            transitions.append((me, sym, node(target, after)))
    return MultiTapeAutomaton(
        A.alphabet, A.tapes, tuple(ids.values()), tape_of, tuple(transitions),
        frozenset(initial), frozenset(final),
        name=f"~{A.name}" if A.name else "")


def rename_tapes(A: MultiTapeAutomaton, mapping: Mapping[str, str]) -> MultiTapeAutomaton:
    if set(mapping) != set(A.tapes):
        raise AutomatonError(f"mapping must cover exactly the tapes {A.tapes}")
    if len(set(mapping.values())) != len(mapping):
        raise AutomatonError("tape mapping is not injective")
    return MultiTapeAutomaton(
        A.alphabet, tuple(mapping[t] for t in A.tapes), A.states,
        {q: mapping[t] for q, t in A.tape_of.items()}, A.transitions,
        A.initial, A.final, name=A.name)


def with_alphabet(A: MultiTapeAutomaton, alphabet: Iterable[str]) -> MultiTapeAutomaton:
    """Embed ``A`` into a larger alphabet; the new symbols have no transitions."""
    alphabet = tuple(alphabet)
    if not set(A.alphabet) <= set(alphabet):
        raise AutomatonError(f"{alphabet} does not contain {A.alphabet}")
    return MultiTapeAutomaton(alphabet, A.tapes, A.states, A.tape_of, A.transitions,
                              A.initial, A.final, name=A.name)


def useful_states(A: MultiTapeAutomaton) -> set[int]:
    forward = set(A.initial)
    work = list(forward)
    while work:
        q = work.pop()
        for _, _, r in A.outgoing.get(q, ()):
            if r not in forward:
                forward.add(r)
                work.append(r)
    preds: dict[int, set[int]] = {}
    for p, _, q in A.transitions:
        preds.setdefault(q, set()).add(p)
    backward = set(A.final)
    work = list(backward)
    while work:
        q = work.pop()
        for p in preds.get(q, ()):
            if p not in backward:
                backward.add(p)
                work.append(p)
    return forward & backward


def trim(A: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Drop every state that lies on no initial-to-final path. Ids are kept.

    An automaton with empty language keeps its smallest initial state, so
    the result always has a state to write down.
    """
    keep = useful_states(A)
    if not keep and A.initial:
        keep = {min(A.initial)}
    return MultiTapeAutomaton(
        A.alphabet, A.tapes, tuple(q for q in A.states if q in keep),
        {q: t for q, t in A.tape_of.items() if q in keep},
        tuple(tr for tr in A.transitions if tr[0] in keep and tr[2] in keep),
        A.initial & keep, A.final & keep, name=A.name)


def relabel(A: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Renumber states 0..n-1 in id order."""
    ids = {q: i for i, q in enumerate(A.states)}
    return MultiTapeAutomaton(
        A.alphabet, A.tapes, tuple(ids.values()),
        {ids[q]: t for q, t in A.tape_of.items()},
        tuple((ids[p], s, ids[q]) for p, s, q in A.transitions),
        frozenset(ids[q] for q in A.initial), frozenset(ids[q] for q in A.final),
        name=A.name)


def restrict(A: MultiTapeAutomaton, checkers: Mapping[str, "TapeChecker"]) -> MultiTapeAutomaton:
    """Keep only runs whose word on each listed tape is accepted by that tape's checker.

    The product tracks one checker state per listed tape; acceptance also
    requires each listed tape to have been read up to its end marker.
    Determinism is preserved.
    """
    check(A)
    tapes = [t for t in A.tapes if t in checkers]
    slot = {t: i for i, t in enumerate(tapes)}
    done_mark = None
    ids: dict[tuple, int] = {}
    tape_of: dict[int, str] = {}
    transitions: list[Transition] = []
    final: set[int] = set()
    queue: deque[tuple] = deque()

    def node(q: int, marks: tuple) -> int:
        key = (q, marks)
        if key not in ids:
            ids[key] = len(ids)
            queue.append(key)
        return ids[key]

    start = tuple(checkers[t].start for t in tapes)
    initial = {node(q, start) for q in sorted(A.initial)}
    while queue:
        key = queue.popleft()
        q, marks = key
        me = ids[key]
        if q in A.final:
            if all(m is done_mark for m in marks):
                final.add(me)
            continue
        tape = A.tape_of[q]
        tape_of[me] = tape
        for _, sym, r in A.outgoing.get(q, ()):
            if tape not in slot:
                transitions.append((me, sym, node(r, marks)))
                continue
            i = slot[tape]
            cur = marks[i]
            if cur is done_mark:
                continue
            if sym == END:
                if not checkers[tape].accepting(cur):
                    continue
                nxt = done_mark
            else:
                nxt = checkers[tape].step(cur, sym)
                if nxt is None:
                    continue
            transitions.append((me, sym, node(r, marks[:i] + (nxt,) + marks[i + 1:])))
    return MultiTapeAutomaton(
        A.alphabet, A.tapes, tuple(ids.values()), tape_of, tuple(transitions),
        frozenset(initial), frozenset(final), name=A.name)


@dataclass(frozen=True)
class TapeChecker:
    """A partial single-tape DFA used by :func:`restrict`."""

    start: int
    delta: Mapping[tuple[int, str], int]
    accept: frozenset[int]

    def step(self, state: int, symbol: str) -> int | None:
        return self.delta.get((state, symbol))

    def accepting(self, state: int) -> bool:
        return state in self.accept

    def matches(self, word: str) -> bool:
        state: int | None = self.start
        for sym in word:
            state = self.step(state, sym)
            if state is None:
                return False
        return self.accepting(state)


def all_words(alphabet: Iterable[str], max_len: int) -> list[str]:
    alphabet = tuple(alphabet)
    return ["".join(w) for n in range(max_len + 1) for w in itertools.product(alphabet, repeat=n)]


def bounded_universe(alphabet: Iterable[str], tapes: Iterable[str], max_len: int) -> set[NWord]:
    tapes = tuple(tapes)
    words = all_words(alphabet, max_len)
    return {NWord(zip(tapes, combo)) for combo in itertools.product(words, repeat=len(tapes))}


def enumerate_language_brute(A: MultiTapeAutomaton, max_len: int) -> set[NWord]:
    """Every n-word with components of length ≤ max_len that ``A`` accepts, by exhaustive testing."""
    check(A)
    return {x for x in bounded_universe(A.alphabet, A.tapes, max_len) if accepts(A, x)}


def enumerate_language(A: MultiTapeAutomaton, max_len: int) -> set[NWord]:
    """Same set as :func:`enumerate_language_brute`, generated from the runs themselves.

    Explores (state, words read so far, exhausted tapes); a run that reaches
    a final state stands for every completion of the tapes it left unfinished.
    """
    check(A)
    tapes = A.tapes
    index = {t: i for i, t in enumerate(tapes)}
    completions = {n: all_words(A.alphabet, n) for n in range(max_len + 1)}
    seen = set()
    accepted_partials = set()
    stack = [(q, ("",) * len(tapes), (False,) * len(tapes)) for q in sorted(A.initial)]
    seen.update(stack)
    while stack:
        q, read, done = stack.pop()
        if q in A.final:
            accepted_partials.add((read, done))
            continue
        i = index[A.tape_of[q]]
        if done[i]:
            continue
        for _, sym, r in A.outgoing.get(q, ()):
            if sym == END:
                nxt = (r, read, done[:i] + (True,) + done[i + 1:])
            elif len(read[i]) < max_len:
                nxt = (r, read[:i] + (read[i] + sym,) + read[i + 1:], done)
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    result = set()
    for read, done in accepted_partials:
        options = [
            [read[i]] if done[i] else [read[i] + s for s in completions[max_len - len(read[i])]]
            for i in range(len(tapes))
        ]
        for combo in itertools.product(*options):
            result.add(NWord(zip(tapes, combo)))
    return result
