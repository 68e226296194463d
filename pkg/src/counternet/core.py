"""Counter nets: finite automata whose transitions add integer vectors to
a fixed number of counters that must never drop below zero.

A net of dimension k is an NFA when k = 0.  Words are tuples of letters,
letters are opaque string tokens, so "#", "$" and subscripted tokens such
as "b_1" are ordinary alphabet members.  Membership is decided with a
per-state frontier of counter vectors kept as a Pareto antichain: larger
counters can only enable more behaviour, so dominated vectors are dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

Word = tuple[str, ...]
Vector = tuple[int, ...]
Frontier = dict[str, set[Vector]]


class InvalidNetError(ValueError):
    """Raised by validate() on the first violated structural invariant."""


class EnumerationCapError(RuntimeError):
    """Raised when a naive path enumeration exceeds its node budget."""


@dataclass(frozen=True)
class Transition:
    source: str
    letter: str
    effect: Vector
    target: str

    def __post_init__(self):
        object.__setattr__(self, "effect", tuple(int(x) for x in self.effect))


@dataclass(frozen=True)
class CounterNet:
    """A k-dimensional counter net.

    states is an ordered tuple (declaration order matters for run
    enumeration and canonical file emission); initial and accepting are
    subsets of it.  Construction does not validate, call validate().
    """

    name: str
    dimension: int
    alphabet: frozenset[str]
    states: tuple[str, ...]
    initial: frozenset[str]
    accepting: frozenset[str]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", tuple(self.transitions))


@dataclass(frozen=True)
class Config:
    """One point of a run: a control state plus a counter valuation."""

    state: str
    counters: Vector


@dataclass(frozen=True)
class Run:
    """A sequence of configurations joined by transitions.

    configs has one more entry than transitions.  regime "N" means every
    valuation stays non-negative; "Z" marks a run allowed to dip below
    zero (produced only on request, e.g. when pumping negative cycles).
    """

    configs: tuple[Config, ...]
    transitions: tuple[Transition, ...]
    regime: str = "N"

    def word(self) -> Word:
        return tuple(t.letter for t in self.transitions)

    def __len__(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class RunEnumeration:
    runs: tuple[Run, ...]
    truncated: bool


def validate(net: CounterNet) -> CounterNet:
    """Return net unchanged, or raise InvalidNetError on the first problem."""
    if net.dimension < 0:
        raise InvalidNetError(f"{net.name}: dimension must be >= 0")
    if len(set(net.states)) != len(net.states):
        raise InvalidNetError(f"{net.name}: duplicate state ids")
    for tok in net.alphabet:
        if not tok or any(ch.isspace() for ch in tok):
            raise InvalidNetError(f"{net.name}: bad alphabet token {tok!r}")
    if not net.initial:
        raise InvalidNetError(f"{net.name}: empty initial set")
    declared = set(net.states)
    for q in net.initial:
        if q not in declared:
            raise InvalidNetError(f"{net.name}: initial state {q!r} not declared")
    for q in net.accepting:
        if q not in declared:
            raise InvalidNetError(f"{net.name}: accepting state {q!r} not declared")
    for i, t in enumerate(net.transitions):
        if t.source not in declared:
            raise InvalidNetError(f"{net.name}: transition {i} source {t.source!r} not declared")
        if t.target not in declared:
            raise InvalidNetError(f"{net.name}: transition {i} target {t.target!r} not declared")
        if t.letter not in net.alphabet:
            raise InvalidNetError(f"{net.name}: transition {i} letter {t.letter!r} not in alphabet")
        if len(t.effect) != net.dimension:
            raise InvalidNetError(
                f"{net.name}: transition {i} effect length {len(t.effect)} != dimension {net.dimension}"
            )
    return net


def is_deterministic(net: CounterNet) -> bool:
    """Single initial state and at most one transition per (state, letter)."""
    if len(net.initial) != 1:
        return False
    seen = set()
    for t in net.transitions:
        key = (t.source, t.letter)
        if key in seen:
            return False
        seen.add(key)
    return True


def max_positive_update(net: CounterNet) -> int:
    """Largest positive coordinate over all transition effects, 0 if none."""
    best = 0
    for t in net.transitions:
        for x in t.effect:
            if x > best:
                best = x
    return best


def run_effect(run: Run) -> Vector:
    """Counter change from the first configuration to the last."""
    first = run.configs[0].counters
    last = run.configs[-1].counters
    return tuple(b - a for a, b in zip(first, last))


def is_valid_n_run(net: CounterNet, run: Run, initial: Sequence[int]) -> bool:
    """Check run starts at the given vector, takes net transitions only,
    stays state-consistent, and never drops a counter below zero."""
    if len(run.configs) != len(run.transitions) + 1:
        return False
    if run.configs[0].counters != tuple(initial):
        return False
    declared = set(net.states)
    known = set(net.transitions)
    for c in run.configs:
        if c.state not in declared:
            return False
        if len(c.counters) != net.dimension:
            return False
        if any(x < 0 for x in c.counters):
            return False
    for i, t in enumerate(run.transitions):
        if t not in known:
            return False
        before, after = run.configs[i], run.configs[i + 1]
        if before.state != t.source or after.state != t.target:
            return False
        if tuple(a + e for a, e in zip(before.counters, t.effect)) != after.counters:
            return False
    return True


# ---------------------------------------------------------------------------
# antichain frontier search

def _dominates(u: Vector, v: Vector) -> bool:
    return all(a >= b for a, b in zip(u, v))


def antichain_insert(vectors: set[Vector], v: Vector) -> None:
    """Insert v unless dominated; evict vectors v dominates."""
    for u in vectors:
        if _dominates(u, v):
            return
    dominated = [u for u in vectors if _dominates(v, u)]
    for u in dominated:
        vectors.discard(u)
    vectors.add(v)


def is_antichain(vectors: Iterable[Vector]) -> bool:
    vs = list(vectors)
    for u, v in itertools.combinations(vs, 2):
        if _dominates(u, v) or _dominates(v, u):
            return False
    return True


@lru_cache(maxsize=512)
def _step_table(net: CounterNet) -> dict[tuple[str, str], tuple[tuple[int, Vector, str], ...]]:
    """(state, letter) -> ((declaration index, effect, target), ...)."""
    table: dict[tuple[str, str], list[tuple[int, Vector, str]]] = {}
    for i, t in enumerate(net.transitions):
        table.setdefault((t.source, t.letter), []).append((i, t.effect, t.target))
    return {k: tuple(v) for k, v in table.items()}


def step_frontier(net: CounterNet, frontier: Frontier, letter: str) -> Frontier:
    """Image of a frontier under one letter, pruned back to antichains.

    A letter without transitions (including letters outside the alphabet)
    produces an empty frontier.
    """
    table = _step_table(net)
    out: Frontier = {}
    for state, vectors in frontier.items():
        moves = table.get((state, letter))
        if not moves:
            continue
        for _, effect, target in moves:
            bucket = out.setdefault(target, set())
            for v in vectors:
                w = tuple(a + e for a, e in zip(v, effect))
                if all(x >= 0 for x in w):
                    antichain_insert(bucket, w)
    return {q: vs for q, vs in out.items() if vs}


def initial_frontier(net: CounterNet, initial: Optional[Sequence[int]] = None) -> Frontier:
    v0 = _initial_vector(net, initial)
    return {q: {v0} for q in net.initial}


def _initial_vector(net: CounterNet, initial: Optional[Sequence[int]]) -> Vector:
    if initial is None:
        return (0,) * net.dimension
    v0 = tuple(int(x) for x in initial)
    if len(v0) != net.dimension:
        raise ValueError(f"initial vector has length {len(v0)}, net dimension is {net.dimension}")
    if any(x < 0 for x in v0):
        raise ValueError("initial vector must be non-negative")
    return v0


def frontier_accepts(net: CounterNet, frontier: Frontier) -> bool:
    return any(frontier.get(q) for q in net.accepting)


def accepts(net: CounterNet, word: Sequence[str], initial: Optional[Sequence[int]] = None) -> bool:
    """Membership via the antichain frontier.  The empty word is accepted
    iff some initial state is accepting."""
    frontier = initial_frontier(net, initial)
    for letter in word:
        frontier = step_frontier(net, frontier, letter)
        if not frontier:
            return False
    return frontier_accepts(net, frontier)


def accepts_naive(
    net: CounterNet,
    word: Sequence[str],
    initial: Optional[Sequence[int]] = None,
    cap: int = 1_000_000,
) -> bool:
    """Membership by exhaustive path enumeration, no pruning.

    Kept deliberately independent of the frontier machinery so the two can
    cross-check each other.  Raises EnumerationCapError past cap nodes.
    """
    w = tuple(word)
    v0 = _initial_vector(net, initial)
    budget = [cap]

    def walk(state: str, pos: int, counters: Vector) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise EnumerationCapError(f"more than {cap} enumeration nodes")
        if pos == len(w):
            return state in net.accepting
        letter = w[pos]
        for t in net.transitions:
            if t.source != state or t.letter != letter:
                continue
            nxt = tuple(a + e for a, e in zip(counters, t.effect))
            if any(x < 0 for x in nxt):
                continue
            if walk(t.target, pos + 1, nxt):
                return True
        return False

    return any(walk(q, 0, v0) for q in net.initial)


def enumerate_runs(
    net: CounterNet,
    word: Sequence[str],
    start_state: str,
    initial: Sequence[int],
    accepting_only: bool = True,
    cap: int = 1000,
) -> RunEnumeration:
    """All N-runs on word from (start_state, initial), depth first by
    ascending transition declaration index, up to cap runs."""
    w = tuple(word)
    v0 = tuple(int(x) for x in initial)
    if any(x < 0 for x in v0):
        raise ValueError("initial vector must be non-negative")
    table = _step_table(net)
    index_of = {i: t for i, t in enumerate(net.transitions)}
    runs: list[Run] = []
    truncated = False

    configs: list[Config] = [Config(start_state, v0)]
    trans: list[Transition] = []

    def walk(pos: int) -> bool:
        nonlocal truncated
        if pos == len(w):
            if not accepting_only or configs[-1].state in net.accepting:
                if len(runs) >= cap:
                    truncated = True
                    return True
                runs.append(Run(tuple(configs), tuple(trans)))
            return False
        here = configs[-1]
        for idx, effect, target in table.get((here.state, w[pos]), ()):
            nxt = tuple(a + e for a, e in zip(here.counters, effect))
            if any(x < 0 for x in nxt):
                continue
            configs.append(Config(target, nxt))
            trans.append(index_of[idx])
            stop = walk(pos + 1)
            configs.pop()
            trans.pop()
            if stop:
                return True
        return False

    walk(0)
    return RunEnumeration(tuple(runs), truncated)


def enumerate_accepting_runs(
    net: CounterNet,
    word: Sequence[str],
    initial: Optional[Sequence[int]] = None,
    cap: int = 1000,
) -> RunEnumeration:
    """Accepting N-runs from every initial state, deterministic order:
    initial states in declaration order, then lexicographic by transition
    declaration index."""
    v0 = _initial_vector(net, initial)
    runs: list[Run] = []
    truncated = False
    for q in net.states:
        if q not in net.initial:
            continue
        sub = enumerate_runs(net, word, q, v0, accepting_only=True, cap=cap - len(runs))
        runs.extend(sub.runs)
        truncated = truncated or sub.truncated
        if truncated:
            break
    return RunEnumeration(tuple(runs), truncated)


def replay(
    net: CounterNet,
    start_state: str,
    initial: Sequence[int],
    transitions: Sequence[Transition],
    regime: str = "N",
) -> Run:
    """Fold a transition sequence into a Run, checking state consistency.

    regime "N" raises ValueError if any counter dips below zero; "Z"
    records the dip and tags the run accordingly.
    """
    state = start_state
    counters = tuple(int(x) for x in initial)
    configs = [Config(state, counters)]
    for t in transitions:
        if t.source != state:
            raise ValueError(f"transition source {t.source!r} does not match state {state!r}")
        counters = tuple(a + e for a, e in zip(counters, t.effect))
        if regime == "N" and any(x < 0 for x in counters):
            raise ValueError("run drops a counter below zero")
        state = t.target
        configs.append(Config(state, counters))
    return Run(tuple(configs), tuple(transitions), regime=regime)
