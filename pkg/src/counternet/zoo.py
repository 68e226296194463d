"""A zoo of reference counter nets with independent language oracles.

Every machine here comes with a hand-written decision procedure for its
language, so machine behaviour and oracle can be swept against each other
over bounded parameter boxes.  The word shapes:

  segmented      a^{m_1} # a^{m_2} # ... # a^{m_t} # b^{m_b} c^{m_c}
  shared budget  a^m # b^n # c^k
  selector       a_1^{n_1} ... a_k^{n_k} b_i c^m
  paired blocks  a_1^{m_1} ... a_k^{m_k} b_1^{n_1} ... b_k^{n_k}
  partition-k    a^{m_1} # ... # a^{m_t} # b_1^{n_1} # ... # b_k^{n_k}
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import CounterNet, Transition, Word, validate

SEGMENT_ALPHABET = frozenset({"a", "b", "c", "#"})


# ---------------------------------------------------------------------------
# word families

@dataclass(frozen=True)
class SegmentedWord:
    """Parameters of a segmented word.  Each segment, including the last,
    is terminated by '#'; t = 0 means the word is just b^{m_b} c^{m_c}."""

    segments: tuple[int, ...]
    m_b: int
    m_c: int

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(int(x) for x in self.segments))
        if any(x < 0 for x in self.segments) or self.m_b < 0 or self.m_c < 0:
            raise ValueError("segmented word parameters must be non-negative")


@dataclass(frozen=True)
class SelectorWord:
    """a_1^{n_1}...a_k^{n_k} b_i c^m: blocks, chosen index (1-based), tail."""

    blocks: tuple[int, ...]
    choice: int
    tail: int


@dataclass(frozen=True)
class PairedBlockWord:
    """a-blocks (supplies) followed by b-blocks (demands), equal arity."""

    supplies: tuple[int, ...]
    demands: tuple[int, ...]


@dataclass(frozen=True)
class PartitionKWord:
    """Segments plus k block demands for the k-counter partition family."""

    segments: tuple[int, ...]
    demands: tuple[int, ...]


def render_segmented(w: SegmentedWord) -> Word:
    out: list[str] = []
    for m in w.segments:
        out.extend(["a"] * m)
        out.append("#")
    out.extend(["b"] * w.m_b)
    out.extend(["c"] * w.m_c)
    return tuple(out)


def parse_segmented(word: Sequence[str]) -> SegmentedWord:
    """Inverse of render_segmented.  Raises ValueError with the offending
    position for words not of the segmented shape."""
    segments: list[int] = []
    m_b = m_c = 0
    phase = "seg"  # seg -> b -> c
    count = 0
    for pos, letter in enumerate(word):
        if letter not in SEGMENT_ALPHABET:
            raise ValueError(f"position {pos}: letter {letter!r} outside a/b/c/#")
        if phase == "seg":
            if letter == "a":
                count += 1
            elif letter == "#":
                segments.append(count)
                count = 0
            elif letter == "b":
                if count:
                    raise ValueError(f"position {pos}: segment not closed by '#'")
                phase = "b"
                m_b = 1
            else:  # c
                if count:
                    raise ValueError(f"position {pos}: segment not closed by '#'")
                phase = "c"
                m_c = 1
        elif phase == "b":
            if letter == "b":
                m_b += 1
            elif letter == "c":
                phase = "c"
                m_c = 1
            else:
                raise ValueError(f"position {pos}: {letter!r} after the b block")
        else:
            if letter == "c":
                m_c += 1
            else:
                raise ValueError(f"position {pos}: {letter!r} after the c block")
    if phase == "seg" and count:
        raise ValueError(f"position {len(word)}: unterminated segment")
    return SegmentedWord(tuple(segments), m_b, m_c)


def render_selector(k: int, w: SelectorWord) -> Word:
    if len(w.blocks) != k or not 1 <= w.choice <= k:
        raise ValueError("selector word does not match k")
    out: list[str] = []
    for i, n in enumerate(w.blocks, start=1):
        out.extend([f"a_{i}"] * n)
    out.append(f"b_{w.choice}")
    out.extend(["c"] * w.tail)
    return tuple(out)


def render_paired(k: int, w: PairedBlockWord) -> Word:
    if len(w.supplies) != k or len(w.demands) != k:
        raise ValueError("paired block word does not match k")
    out: list[str] = []
    for i, n in enumerate(w.supplies, start=1):
        out.extend([f"a_{i}"] * n)
    for i, n in enumerate(w.demands, start=1):
        out.extend([f"b_{i}"] * n)
    return tuple(out)


def render_partition_k(k: int, w: PartitionKWord) -> Word:
    """Segments each '#'-terminated, then k demand blocks separated by '#'."""
    if len(w.demands) != k:
        raise ValueError("partition word does not match k")
    out: list[str] = []
    for m in w.segments:
        out.extend(["a"] * m)
        out.append("#")
    for i, n in enumerate(w.demands, start=1):
        if i > 1:
            out.append("#")
        out.extend([f"b_{i}"] * n)
    return tuple(out)


# ---------------------------------------------------------------------------
# oracles

def partition_oracle(w: SegmentedWord) -> bool:
    """Some subset of the segments covers m_b while the rest covers m_c.

    Subset-sum over a bitset: bit s of reachable is set iff some subset of
    segments sums to s.
    """
    total = sum(w.segments)
    if w.m_b + w.m_c > total:
        return False
    reachable = 1
    for m in w.segments:
        reachable |= reachable << m
    lo, hi = w.m_b, total - w.m_c
    if lo > hi:
        return False
    mask = ((1 << (hi - lo + 1)) - 1) << lo
    return bool(reachable & mask)


def shared_budget_oracle(m: int, n: int, k: int) -> bool:
    return m >= n and m >= k


def selector_oracle(k: int, w: SelectorWord) -> bool:
    if len(w.blocks) != k or not 1 <= w.choice <= k:
        raise ValueError("selector word does not match k")
    return w.blocks[w.choice - 1] >= w.tail


def paired_oracle(k: int, w: PairedBlockWord) -> bool:
    if len(w.supplies) != k or len(w.demands) != k:
        raise ValueError("paired block word does not match k")
    return all(m >= n for m, n in zip(w.supplies, w.demands))


def partition_k_oracle(k: int, w: PartitionKWord) -> bool:
    """Disjoint subsets I_1..I_k of the segments with sum(I_i) >= demand i.

    Dynamic programme over demand-capped sum tuples; segments may also go
    unused, although assigning them anywhere never hurts.
    """
    if len(w.demands) != k:
        raise ValueError("partition word does not match k")
    caps = w.demands
    states = {(0,) * k}
    for m in w.segments:
        nxt = set(states)
        for s in states:
            for i in range(k):
                bumped = list(s)
                bumped[i] = min(caps[i], s[i] + m)
                nxt.add(tuple(bumped))
        states = nxt
    return tuple(caps) in states


def partition_k_oracle_bruteforce(k: int, w: PartitionKWord) -> bool:
    """Same language by trying all k^t assignments of segments to demands."""
    if len(w.demands) != k:
        raise ValueError("partition word does not match k")
    t = len(w.segments)
    if k == 0:
        return True  # no demands to satisfy
    for assignment in _assignments(t, k):
        sums = [0] * k
        for seg, owner in zip(w.segments, assignment):
            sums[owner] += seg
        if all(s >= d for s, d in zip(sums, w.demands)):
            return True
    return False


def _assignments(t: int, k: int):
    if t == 0:
        yield ()
        return
    for rest in _assignments(t - 1, k):
        for owner in range(k):
            yield rest + (owner,)


# ---------------------------------------------------------------------------
# machines

def build_partition_net() -> CounterNet:
    """2-counter net for the segmented partition language: each a-segment
    is banked on counter 1 or counter 2, b drains counter 1, c counter 2."""
    T = Transition
    ts = (
        T("hub", "a", (1, 0), "bank1"),
        T("hub", "a", (0, 1), "bank2"),
        T("bank1", "a", (1, 0), "bank1"),
        T("bank2", "a", (0, 1), "bank2"),
        T("bank1", "#", (0, 0), "hub"),
        T("bank2", "#", (0, 0), "hub"),
        T("hub", "#", (0, 0), "hub"),
        T("hub", "b", (-1, 0), "drain_b"),
        T("drain_b", "b", (-1, 0), "drain_b"),
        T("hub", "c", (0, -1), "drain_c"),
        T("drain_b", "c", (0, -1), "drain_c"),
        T("drain_c", "c", (0, -1), "drain_c"),
    )
    return validate(CounterNet(
        name="partition",
        dimension=2,
        alphabet=SEGMENT_ALPHABET,
        states=("hub", "bank1", "bank2", "drain_b", "drain_c"),
        initial=("hub",),
        accepting=("hub", "drain_b", "drain_c"),
        transitions=ts,
    ))


def build_shared_budget() -> tuple[CounterNet, CounterNet, CounterNet]:
    """The a^m#b^n#c^k budget family: a 2-counter net for m >= n and
    m >= k, plus the two 1-counter factors checking each bound alone."""

    def chain(name: str, ea: tuple[int, ...], eb: tuple[int, ...], ec: tuple[int, ...], dim: int) -> CounterNet:
        zero = (0,) * dim
        T = Transition
        ts = (
            T("q0", "a", ea, "q0"),
            T("q0", "#", zero, "q1"),
            T("q1", "b", eb, "q1"),
            T("q1", "#", zero, "q2"),
            T("q2", "c", ec, "q2"),
        )
        return validate(CounterNet(
            name=name,
            dimension=dim,
            alphabet=SEGMENT_ALPHABET,
            states=("q0", "q1", "q2"),
            initial=("q0",),
            accepting=("q2",),
            transitions=ts,
        ))

    main = chain("budget", (1, 1), (-1, 0), (0, -1), 2)
    factor_b = chain("budget_b", (1,), (-1,), (0,), 1)
    factor_c = chain("budget_c", (1,), (0,), (-1,), 1)
    return main, factor_b, factor_c


def build_coarse_factors() -> tuple[CounterNet, CounterNet]:
    """Two 1-counter nets over segmented words that only check the total:
    the first accepts when the summed segment lengths cover the b block,
    the second when they cover the c block.  Their intersection strictly
    exceeds the partition language (no subset split is enforced), which
    makes them the standard demonstration input for the refuter."""

    def total_checker(name: str, eb: int, ec: int) -> CounterNet:
        T = Transition
        ts = (
            T("seg", "a", (1,), "seg"),
            T("seg", "#", (0,), "seg"),
            T("seg", "b", (eb,), "bs"),
            T("bs", "b", (eb,), "bs"),
            T("bs", "c", (ec,), "cs"),
            T("seg", "c", (ec,), "cs"),
            T("cs", "c", (ec,), "cs"),
        )
        return validate(CounterNet(
            name=name,
            dimension=1,
            alphabet=SEGMENT_ALPHABET,
            states=("seg", "bs", "cs"),
            initial=("seg",),
            accepting=("seg", "bs", "cs"),
            transitions=ts,
        ))

    return total_checker("coarse_b", -1, 0), total_checker("coarse_c", 0, -1)


def build_selector_dcn(k: int) -> CounterNet:
    """Deterministic k-counter net for the selector language: counter i
    counts a_i, the b_i letter picks which counter the c tail drains."""
    if k < 1:
        raise ValueError("k must be >= 1")
    zero = (0,) * k
    unit = lambda i: tuple(1 if j == i else 0 for j in range(k))
    states = [f"blk{j}" for j in range(1, k + 1)] + [f"sel{i}" for i in range(1, k + 1)]
    ts: list[Transition] = []
    for j in range(1, k + 1):
        for l in range(j, k + 1):
            ts.append(Transition(f"blk{j}", f"a_{l}", unit(l - 1), f"blk{l}"))
        for i in range(1, k + 1):
            ts.append(Transition(f"blk{j}", f"b_{i}", zero, f"sel{i}"))
    for i in range(1, k + 1):
        ts.append(Transition(f"sel{i}", "c", tuple(-1 if j == i - 1 else 0 for j in range(k)), f"sel{i}"))
    alphabet = {f"a_{i}" for i in range(1, k + 1)} | {f"b_{i}" for i in range(1, k + 1)} | {"c"}
    return validate(CounterNet(
        name=f"selector_dcn_{k}",
        dimension=k,
        alphabet=alphabet,
        states=tuple(states),
        initial=("blk1",),
        accepting=tuple(f"sel{i}" for i in range(1, k + 1)),
        transitions=tuple(ts),
    ))


def build_selector_ncn(k: int) -> CounterNet:
    """One-counter net for the same language: guess the selected index up
    front (one initial state per guess), count only that a-block, drain on
    c.  Nondeterministic for k >= 2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    states = [f"g{i}_blk{j}" for i in range(1, k + 1) for j in range(1, k + 1)] + ["drain"]
    ts: list[Transition] = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            for l in range(j, k + 1):
                ts.append(Transition(f"g{i}_blk{j}", f"a_{l}", (1,) if l == i else (0,), f"g{i}_blk{l}"))
            ts.append(Transition(f"g{i}_blk{j}", f"b_{i}", (0,), "drain"))
    ts.append(Transition("drain", "c", (-1,), "drain"))
    alphabet = {f"a_{i}" for i in range(1, k + 1)} | {f"b_{i}" for i in range(1, k + 1)} | {"c"}
    return validate(CounterNet(
        name=f"selector_ncn_{k}",
        dimension=1,
        alphabet=alphabet,
        states=tuple(states),
        initial=tuple(f"g{i}_blk1" for i in range(1, k + 1)),
        accepting=("drain",),
        transitions=tuple(ts),
    ))


def build_paired_dcn(k: int) -> CounterNet:
    """Deterministic k-counter net for paired blocks: counter i banks
    a_i and pays b_i, so runs survive exactly when every supply covers
    its demand.  All states accept; the counters do the rejecting."""
    if k < 1:
        raise ValueError("k must be >= 1")
    unit = lambda i, sign: tuple(sign if j == i else 0 for j in range(k))
    states = [f"sup{j}" for j in range(1, k + 1)] + [f"dem{j}" for j in range(1, k + 1)]
    ts: list[Transition] = []
    for j in range(1, k + 1):
        for l in range(j, k + 1):
            ts.append(Transition(f"sup{j}", f"a_{l}", unit(l - 1, 1), f"sup{l}"))
        for l in range(1, k + 1):
            ts.append(Transition(f"sup{j}", f"b_{l}", unit(l - 1, -1), f"dem{l}"))
    for j in range(1, k + 1):
        for l in range(j, k + 1):
            ts.append(Transition(f"dem{j}", f"b_{l}", unit(l - 1, -1), f"dem{l}"))
    alphabet = {f"a_{i}" for i in range(1, k + 1)} | {f"b_{i}" for i in range(1, k + 1)}
    return validate(CounterNet(
        name=f"paired_dcn_{k}",
        dimension=k,
        alphabet=alphabet,
        states=tuple(states),
        initial=("sup1",),
        accepting=tuple(states),
        transitions=tuple(ts),
    ))


def build_partition_k(k: int) -> CounterNet:
    """k-counter generalisation of the partition net.  Segments bank one
    of k counters; demand block i drains counter i; blocks are separated
    by '#'.  At the hub a '#' either closes a segment or, by guess, opens
    the demand phase with an empty first block."""
    if k < 1:
        raise ValueError("k must be >= 1")
    unit = lambda i, sign: tuple(sign if j == i else 0 for j in range(k))
    zero = (0,) * k
    states = ["hub"] + [f"bank{i}" for i in range(1, k + 1)] + [f"blk{i}" for i in range(1, k + 1)]
    ts: list[Transition] = []
    for i in range(1, k + 1):
        ts.append(Transition("hub", "a", unit(i - 1, 1), f"bank{i}"))
        ts.append(Transition(f"bank{i}", "a", unit(i - 1, 1), f"bank{i}"))
        ts.append(Transition(f"bank{i}", "#", zero, "hub"))
    ts.append(Transition("hub", "#", zero, "hub"))
    ts.append(Transition("hub", "b_1", unit(0, -1), "blk1"))
    if k >= 2:
        ts.append(Transition("hub", "#", zero, "blk2"))
    for i in range(1, k + 1):
        ts.append(Transition(f"blk{i}", f"b_{i}", unit(i - 1, -1), f"blk{i}"))
        if i < k:
            ts.append(Transition(f"blk{i}", "#", zero, f"blk{i+1}"))
    alphabet = {"a", "#"} | {f"b_{i}" for i in range(1, k + 1)}
    accepting = (f"blk{k}",) if k >= 2 else ("hub", "blk1")
    return validate(CounterNet(
        name=f"partition_{k}",
        dimension=k,
        alphabet=alphabet,
        states=tuple(states),
        initial=("hub",),
        accepting=accepting,
        transitions=tuple(ts),
    ))
