"""Flattening a deterministic counter net into a single-state net.

Two stages.  distinct_label relabels a deterministic net so every
transition reads its own fresh letter, which makes words and transition
paths interchangeable.  vasify then folds the control states into three
extra counters: each state gets a pair of codes (a_i, b_i) chosen so that
no sum a_i + a_j or b_i + b_j collides with another code, and each
original transition becomes a three-letter protocol that swaps the source
code out and the target code in.  At rest exactly the first-phase letters
of transitions leaving the encoded state are enabled, so the single-state
net tracks the original control flow through counter values alone.

The flattened language provably contains words beyond the images of
original runs (the empty word, stopped protocols, interleavings from a
shared source); verify_pipeline reports these rather than failing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    CounterNet,
    Transition,
    Vector,
    Word,
    accepts,
    is_deterministic,
    validate,
)

VAS_STATE = "u"


@dataclass(frozen=True)
class LabelMap:
    """Mapping from fresh letters back to the transitions they label."""

    net: CounterNet
    source: CounterNet
    letter_to_transition: dict[str, Transition]

    def original_letter(self, label: str) -> str:
        return self.letter_to_transition[label].letter

    def unlabel(self, word: Word) -> Word:
        return tuple(self.original_letter(x) for x in word)


def distinct_label(net: CounterNet) -> LabelMap:
    """Replace each transition's letter with a fresh one (g0, g1, ... by
    declaration order).  Requires a deterministic input; the relabelled
    net is then deterministic with a one-letter-per-transition alphabet,
    so accepted words and accepting paths are in bijection."""
    if not is_deterministic(net):
        raise ValueError("distinct labelling requires a deterministic net")
    fresh: list[Transition] = []
    mapping: dict[str, Transition] = {}
    for i, t in enumerate(net.transitions):
        label = f"g{i}"
        fresh.append(Transition(t.source, label, t.effect, t.target))
        mapping[label] = t
    labelled = validate(CounterNet(
        name=f"{net.name}+labels",
        dimension=net.dimension,
        alphabet=frozenset(mapping),
        states=net.states,
        initial=net.initial,
        accepting=net.accepting,
        transitions=tuple(fresh),
    ))
    return LabelMap(labelled, net, mapping)


# ---------------------------------------------------------------------------
# single-state flattening

def state_codes(n: int) -> list[tuple[int, int]]:
    """Code pair (a_i, b_i) for each of n states, 1-based order:
    a_i = i and b_i = (n+1)(n+1-i).  All 2n codes are distinct and no
    code equals a sum of two codes from the same family, which is what
    makes the rest patterns unambiguous."""
    return [(i, (n + 1) * (n + 1 - i)) for i in range(1, n + 1)]


@dataclass(frozen=True)
class TripletInfo:
    """The three letters and control effects simulating one original
    transition."""

    transition: Transition
    letters: tuple[str, str, str]


@dataclass(frozen=True)
class VasResult:
    net: CounterNet
    initial: Vector
    codes: dict[str, tuple[int, int]]
    triplets: tuple[TripletInfo, ...]
    source: CounterNet

    def triplet_for(self, letter: str) -> TripletInfo:
        for info in self.triplets:
            if letter in info.letters:
                return info
        raise KeyError(letter)


def vasify(net: CounterNet) -> VasResult:
    """Flatten a deterministic k-net with a single initial state into an
    equivalent-up-to-protocol single-state (k+3)-net.

    Each original transition (q_i, s, x, q_j) is simulated by letters
    s_1 s_2 s_3 with control effects, in the three added coordinates:

        s_1: (-a_i,  a_{n+1-i} - b_i,  b_{n+1-i})
        s_2: ( b_i, -a_{n+1-i},        a_i - b_{n+1-i})
        s_3: ( a_j - b_i,  b_j,       -a_i)            plus x on the
                                                       original coordinates.

    Summing the three restores the rest pattern (a_j, b_j, 0), so each
    completed protocol moves the encoded state from q_i to q_j.  The
    intermediate patterns after s_1 and s_2 enable exactly the next
    phase of transitions leaving q_i and nothing else.
    """
    if not is_deterministic(net):
        raise ValueError("flattening requires a deterministic net")
    if len(net.initial) != 1:
        raise ValueError("flattening requires a single initial state")
    n = len(net.states)
    codes = state_codes(n)
    index = {q: i for i, q in enumerate(net.states)}  # 0-based
    k = net.dimension

    def control(q: str) -> tuple[int, int, int, int]:
        """(a_i, b_i, a_{n+1-i}, b_{n+1-i}) for the 1-based index of q."""
        i = index[q] + 1
        a_i, b_i = codes[i - 1]
        a_m, b_m = codes[n - i]  # the mirror index n+1-i, 1-based
        return a_i, b_i, a_m, b_m

    transitions: list[Transition] = []
    triplets: list[TripletInfo] = []
    zeros = (0,) * k
    for t in net.transitions:
        a_i, b_i, a_m, b_m = control(t.source)
        j = index[t.target] + 1
        a_j, b_j = codes[j - 1]
        letters = (f"{t.letter}_1", f"{t.letter}_2", f"{t.letter}_3")
        phase_effects = (
            zeros + (-a_i, a_m - b_i, b_m),
            zeros + (b_i, -a_m, a_i - b_m),
            tuple(t.effect) + (a_j - b_i, b_j, -a_i),
        )
        for letter, effect in zip(letters, phase_effects):
            transitions.append(Transition(VAS_STATE, letter, effect, VAS_STATE))
        triplets.append(TripletInfo(t, letters))

    seen_letters = [t.letter for t in transitions]
    if len(set(seen_letters)) != len(seen_letters):
        raise ValueError("transition letters must be distinct; relabel first")

    start = next(iter(net.initial))
    a_0, b_0 = codes[index[start]]
    flat = validate(CounterNet(
        name=f"{net.name}+flat",
        dimension=k + 3,
        alphabet=frozenset(seen_letters),
        states=(VAS_STATE,),
        initial=frozenset({VAS_STATE}),
        accepting=frozenset({VAS_STATE}),
        transitions=tuple(transitions),
    ))
    initial = zeros + (a_0, b_0, 0)
    return VasResult(flat, initial, {q: codes[index[q]] for q in net.states},
                     tuple(triplets), net)


def triplet_transform(word: Word, stop: int = 3) -> Word:
    """Expand each letter s to s_1 s_2 s_3, truncating the protocol of the
    final letter after `stop` phases (1, 2 or 3)."""
    if not 1 <= stop <= 3:
        raise ValueError("stop must be 1, 2 or 3")
    out: list[str] = []
    for pos, letter in enumerate(word):
        phases = 3 if pos < len(word) - 1 else stop
        out.extend(f"{letter}_{p}" for p in range(1, phases + 1))
    return tuple(out)


# ---------------------------------------------------------------------------
# pattern discipline

def classify_control(result: VasResult, valuation: Vector) -> Optional[tuple[str, str]]:
    """Match the last three coordinates against the rest and intermediate
    patterns: rest(q) = (a, b, 0), mid1(q) = (0, a', b'), mid2(q) =
    (b, 0, a) with (a', b') the mirror codes.  Returns (pattern, state)
    or None.  The code scheme keeps the patterns pairwise distinct."""
    tail = valuation[-3:]
    n = len(result.source.states)
    codes = state_codes(n)
    for i, q in enumerate(result.source.states):
        a_i, b_i = codes[i]
        a_m, b_m = codes[n - 1 - i]
        if tail == (a_i, b_i, 0):
            return ("rest", q)
        if tail == (0, a_m, b_m):
            return ("mid1", q)
        if tail == (b_i, 0, a_i):
            return ("mid2", q)
    return None


def enabled_letters(result: VasResult, valuation: Vector) -> set[str]:
    out = set()
    for t in result.net.transitions:
        if all(v + e >= 0 for v, e in zip(valuation, t.effect)):
            out.add(t.letter)
    return out


def expected_enabled(result: VasResult, pattern: str, state: str) -> set[str]:
    """Letters the protocol discipline allows: at rest(q), phase-1 letters
    of transitions leaving q; after phase 1, their phase-2 letters; after
    phase 2, their phase-3 letters, ignoring original-coordinate gates."""
    phase = {"rest": 0, "mid1": 1, "mid2": 2}[pattern]
    out = set()
    for info in result.triplets:
        if info.transition.source == state:
            out.add(info.letters[phase])
    return out


@dataclass(frozen=True)
class GatingViolation:
    valuation: Vector
    pattern: Optional[tuple[str, str]]
    enabled: set[str]
    expected: Optional[set[str]]


def check_gating(
    result: VasResult,
    max_depth: int = 12,
    node_cap: int = 20000,
) -> tuple[list[GatingViolation], int, bool]:
    """Walk the reachable valuations of the flattened net and check the
    protocol discipline at every node: the control coordinates must match
    exactly one pattern, and the enabled letters must be the expected
    phase letters of that pattern, except that phase-3 letters may also
    be blocked by the original coordinates.

    Returns (violations, nodes visited, walk exhausted before caps).
    """
    k = result.source.dimension
    seen = {result.initial}
    frontier = [result.initial]
    violations: list[GatingViolation] = []
    visited = 0
    complete = True
    for _ in range(max_depth):
        if not frontier:
            break
        next_frontier = []
        for val in frontier:
            visited += 1
            pattern = classify_control(result, val)
            enabled = enabled_letters(result, val)
            if pattern is None:
                violations.append(GatingViolation(val, None, enabled, None))
                continue
            kind, state = pattern
            expected = expected_enabled(result, kind, state)
            control_enabled = {
                t.letter for t in result.net.transitions
                if all(v + e >= 0 for v, e in zip(val[k:], t.effect[k:]))
            }
            ok = control_enabled == expected and enabled <= expected
            if kind != "mid2" and enabled != expected:
                # phases 1 and 2 touch no original coordinate, so the
                # full enabled set must match exactly
                ok = False
            if not ok:
                violations.append(GatingViolation(val, pattern, enabled, expected))
            for t in result.net.transitions:
                if t.letter not in enabled:
                    continue
                succ = tuple(v + e for v, e in zip(val, t.effect))
                if succ not in seen:
                    seen.add(succ)
                    if len(seen) > node_cap:
                        complete = False
                    else:
                        next_frontier.append(succ)
        frontier = next_frontier
    if frontier:
        complete = False
    return violations, visited, complete


# ---------------------------------------------------------------------------
# end-to-end pipeline check

@dataclass(frozen=True)
class PipelineReport:
    labelled_matches: bool
    containment_ok: bool
    containment_failures: tuple[Word, ...]
    extra_members: tuple[Word, ...]
    extra_count: int
    gating_ok: bool
    gating_violations: int
    stats: dict


def _language_by_paths(net: CounterNet, max_len: int) -> set[Word]:
    """Accepted words of a deterministic distinctly-labelled net, where
    words correspond to transition paths."""
    out: set[Word] = set()
    start = next(iter(net.initial))
    zeros = (0,) * net.dimension

    def walk(state: str, counters: Vector, word: tuple[str, ...]) -> None:
        if state in net.accepting:
            out.add(word)
        if len(word) == max_len:
            return
        for t in net.transitions:
            if t.source != state:
                continue
            nxt = tuple(c + e for c, e in zip(counters, t.effect))
            if any(x < 0 for x in nxt):
                continue
            walk(t.target, nxt, word + (t.letter,))

    walk(start, zeros, ())
    return out


def _flat_language(result: VasResult, max_len: int) -> set[Word]:
    out: set[Word] = set()

    def walk(val: Vector, word: tuple[str, ...]) -> None:
        out.add(word)  # single accepting state, every reachable word counts
        if len(word) == max_len:
            return
        for t in result.net.transitions:
            nxt = tuple(v + e for v, e in zip(val, t.effect))
            if all(x >= 0 for x in nxt):
                walk(nxt, word + (t.letter,))

    walk(result.initial, ())
    return out


def verify_pipeline(
    net: CounterNet,
    max_len: int = 6,
    flat_len: int = 7,
    explore_depth: int = 12,
) -> PipelineReport:
    """Run both pipeline stages on a deterministic net and cross-check.

    labelled_matches: the relabelled net's bounded language maps back
    onto the original's, bijectively.  containment_ok: for every short
    word of the relabelled net, all three phase prefixes of its protocol
    expansion are accepted by the flattened net.  extra_members: words
    the flattened net accepts that are not phase prefixes of protocol
    expansions; these are inherent to the flattening and only reported.
    gating: pattern and enabled-letter discipline over the reachable
    valuations.
    """
    labels = distinct_label(net)
    result = vasify(labels.net)

    lab_words = _language_by_paths(labels.net, max_len)
    orig_words = {w for w in map(labels.unlabel, lab_words)}
    direct = {w for w in _all_accepted(net, max_len)}
    # unlabelling must be injective here: one accepted path per word
    labelled_matches = orig_words == direct and len(lab_words) == len(orig_words)

    failures: list[Word] = []
    expanded: set[Word] = set()
    for w in sorted(lab_words, key=lambda x: (len(x), x)):
        for stop in (1, 2, 3):
            if not w and stop > 1:
                continue
            pref = triplet_transform(w, stop) if w else ()
            expanded.add(pref)
            if not accepts(result.net, pref, initial=result.initial):
                failures.append(pref)

    flat_words = _flat_language(result, flat_len)
    closed_images = {triplet_transform(w, s) for w in lab_words for s in (1, 2, 3) if w}
    closed_images.add(())
    extras = sorted((w for w in flat_words if w not in closed_images),
                    key=lambda x: (len(x), x))

    violations, visited, complete = check_gating(result, explore_depth)
    return PipelineReport(
        labelled_matches=labelled_matches,
        containment_ok=not failures,
        containment_failures=tuple(failures),
        extra_members=tuple(extras[:20]),
        extra_count=len(extras),
        gating_ok=not violations,
        gating_violations=len(violations),
        stats={
            "labelled_words": len(lab_words),
            "flat_words": len(flat_words),
            "expanded_prefixes": len(expanded),
            "gating_nodes": visited,
            "gating_complete": complete,
        },
    )


def _all_accepted(net: CounterNet, max_len: int):
    from itertools import product as iproduct
    letters = sorted(net.alphabet)
    for length in range(max_len + 1):
        for combo in iproduct(letters, repeat=length):
            if accepts(net, combo):
                yield combo
