"""Seeded random net generators shared by the property and acceptance
suites.  Plain random.Random so the acceptance runs are reproducible."""

from __future__ import annotations

import random

from counternet.core import CounterNet, Transition, validate

LETTERS = ("x", "y")


def random_cn(
    rng: random.Random,
    dim: int,
    max_states: int = 5,
    letters: tuple[str, ...] = LETTERS,
    effect_range: tuple[int, int] = (-2, 2),
    name: str = "rnd",
) -> CounterNet:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    ts: list[Transition] = []
    for s in states:
        for letter in letters:
            for _ in range(rng.randint(0, 2)):
                effect = tuple(rng.randint(*effect_range) for _ in range(dim))
                ts.append(Transition(s, letter, effect, rng.choice(states)))
    initial = tuple(rng.sample(states, rng.randint(1, n)))
    accepting = tuple(s for s in states if rng.random() < 0.5)
    return validate(CounterNet(name, dim, frozenset(letters), states,
                               frozenset(initial), frozenset(accepting), tuple(ts)))


def random_unary_1cn(
    rng: random.Random,
    max_states: int = 4,
    max_update: int = 2,
    name: str = "unary",
) -> CounterNet:
    """Random 1-counter net over a single letter, for the unary run
    bounds.  Every state gets at least one outgoing transition so runs
    do not die of missing letters, only of negative counters."""
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    ts: list[Transition] = []
    for s in states:
        for _ in range(rng.randint(1, 2)):
            effect = (rng.randint(-max_update, max_update),)
            ts.append(Transition(s, "s", effect, rng.choice(states)))
    initial = tuple(rng.sample(states, rng.randint(1, n)))
    accepting = tuple(s for s in states if rng.random() < 0.5)
    return validate(CounterNet(name, 1, frozenset({"s"}), states,
                               frozenset(initial), frozenset(accepting), tuple(ts)))


def random_dcn(
    rng: random.Random,
    dim: int,
    max_states: int = 4,
    letters: tuple[str, ...] = LETTERS,
    effect_range: tuple[int, int] = (-2, 2),
    name: str = "rnd_d",
) -> CounterNet:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    ts: list[Transition] = []
    for s in states:
        for letter in letters:
            if rng.random() < 0.75:
                effect = tuple(rng.randint(*effect_range) for _ in range(dim))
                ts.append(Transition(s, letter, effect, rng.choice(states)))
    accepting = tuple(s for s in states if rng.random() < 0.5)
    return validate(CounterNet(name, dim, frozenset(letters), states,
                               frozenset({states[0]}), frozenset(accepting), tuple(ts)))
