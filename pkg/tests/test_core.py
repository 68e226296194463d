import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from counternet.core import (
    Config,
    CounterNet,
    EnumerationCapError,
    InvalidNetError,
    Transition,
    accepts,
    accepts_naive,
    antichain_insert,
    enumerate_accepting_runs,
    enumerate_runs,
    initial_frontier,
    is_antichain,
    is_deterministic,
    is_valid_n_run,
    max_positive_update,
    replay,
    run_effect,
    step_frontier,
    validate,
)
from counternet.zoo import build_paired_dcn, build_partition_net, build_selector_ncn

from randnets import random_cn


def word(text: str) -> tuple[str, ...]:
    return tuple(text)


def small_net(**overrides) -> CounterNet:
    base = dict(
        name="toy",
        dimension=1,
        alphabet=frozenset({"x"}),
        states=("p", "q"),
        initial=frozenset({"p"}),
        accepting=frozenset({"q"}),
        transitions=(Transition("p", "x", (1,), "q"),),
    )
    base.update(overrides)
    return CounterNet(**base)


# --- validation ---------------------------------------------------------

def test_validate_accepts_well_formed():
    assert validate(small_net()) is not None


def test_validate_rejects_duplicate_states():
    with pytest.raises(InvalidNetError):
        validate(small_net(states=("p", "p")))


def test_validate_rejects_wrong_effect_arity():
    bad = (Transition("p", "x", (1, 2), "q"),)
    with pytest.raises(InvalidNetError):
        validate(small_net(transitions=bad))


def test_validate_rejects_undeclared_state():
    bad = (Transition("p", "x", (0,), "ghost"),)
    with pytest.raises(InvalidNetError):
        validate(small_net(transitions=bad))


def test_validate_rejects_letter_outside_alphabet():
    bad = (Transition("p", "z", (0,), "q"),)
    with pytest.raises(InvalidNetError):
        validate(small_net(transitions=bad))


def test_validate_rejects_empty_initial():
    with pytest.raises(InvalidNetError):
        validate(small_net(initial=frozenset()))


def test_validate_rejects_whitespace_letter():
    with pytest.raises(InvalidNetError):
        validate(small_net(alphabet=frozenset({"a b"}),
                           transitions=(Transition("p", "a b", (0,), "q"),)))


def test_validate_rejects_negative_dimension():
    with pytest.raises(InvalidNetError):
        validate(small_net(dimension=-1, transitions=()))


# --- basic observations -------------------------------------------------

def test_partition_net_is_nondeterministic():
    # the two a-transitions out of the hub are the whole point
    assert not is_deterministic(build_partition_net())


def test_paired_dcn_is_deterministic():
    assert is_deterministic(build_paired_dcn(2))


def test_selector_ncn_multiple_initials():
    net = build_selector_ncn(2)
    assert len(net.initial) == 2
    assert not is_deterministic(net)


def test_max_positive_update_partition_net():
    assert max_positive_update(build_partition_net()) == 1


def test_max_positive_update_ignores_negatives():
    net = small_net(transitions=(Transition("p", "x", (-3,), "q"),))
    assert max_positive_update(validate(net)) == 0


def test_run_effect_via_replay():
    net = validate(small_net())
    run = replay(net, "p", (0,), net.transitions)
    assert run_effect(run) == (1,)
    assert run.word() == ("x",)


# --- frontier membership ------------------------------------------------

def test_antichain_insert_drops_dominated():
    vs = {(2, 2)}
    antichain_insert(vs, (1, 1))
    assert vs == {(2, 2)}


def test_antichain_insert_replaces_dominated():
    vs = {(1, 1), (0, 3)}
    antichain_insert(vs, (2, 2))
    assert vs == {(2, 2), (0, 3)}


def test_antichain_insert_keeps_incomparable():
    vs = {(2, 0)}
    antichain_insert(vs, (0, 2))
    assert vs == {(2, 0), (0, 2)}


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12))
def test_antichain_insert_always_yields_antichain(vectors):
    acc: set = set()
    for v in vectors:
        antichain_insert(acc, v)
    assert is_antichain(acc)
    # every inserted vector is dominated by something kept
    for v in vectors:
        assert any(all(k >= x for k, x in zip(kept, v)) for kept in acc)


def test_step_frontier_partition_net():
    p = build_partition_net()
    f = step_frontier(p, initial_frontier(p), "a")
    assert f == {"bank1": {(1, 0)}, "bank2": {(0, 1)}}


def test_step_frontier_unknown_letter_is_empty():
    p = build_partition_net()
    assert step_frontier(p, initial_frontier(p), "z") == {}


def test_frontiers_stay_antichains_along_partition_words():
    p = build_partition_net()
    f = initial_frontier(p)
    for letter in "aa#a#bbc":
        f = step_frontier(p, f, letter)
        assert all(is_antichain(vs) for vs in f.values())


# --- membership ---------------------------------------------------------

def test_accepts_golden_member():
    p = build_partition_net()
    assert accepts(p, word("a" * 10 + "#" + "a" * 20 + "#" + "a" * 15 + "#" + "b" * 15 + "c" * 30))


def test_accepts_golden_nonmember():
    p = build_partition_net()
    assert not accepts(p, word("a" * 10 + "#" + "a" * 20 + "#" + "a" * 15 + "#" + "b" * 21 + "c" * 21))


def test_empty_word_accepted_iff_initial_accepting():
    p = build_partition_net()
    assert accepts(p, ())  # the hub accepts: empty word has the trivial split
    strict = validate(small_net())
    assert not accepts(strict, ())


def test_accepts_with_explicit_initial_counters():
    net = validate(small_net(transitions=(Transition("p", "x", (-1,), "q"),)))
    assert not accepts(net, ("x",))
    assert accepts(net, ("x",), initial=(1,))


def test_accepts_rejects_bad_initial_vector():
    net = validate(small_net())
    with pytest.raises(ValueError):
        accepts(net, ("x",), initial=(1, 2))
    with pytest.raises(ValueError):
        accepts(net, ("x",), initial=(-1,))


def test_zero_dimension_net_is_plain_automaton():
    net = validate(CounterNet(
        "nfa", 0, frozenset({"x"}), ("p", "q"),
        frozenset({"p"}), frozenset({"q"}),
        (Transition("p", "x", (), "q"), Transition("q", "x", (), "p")),
    ))
    assert accepts(net, ("x",))
    assert not accepts(net, ("x", "x"))
    assert accepts(net, ("x",) * 3)


def test_naive_agrees_on_partition_samples():
    p = build_partition_net()
    for text in ("", "a#bc", "a#b", "a#a#bbcc", "aa#bc", "#", "ab", "a#a#bc"):
        w = word(text)
        assert accepts(p, w) == accepts_naive(p, w), text


def test_naive_cap_raises():
    # two self loops and no accepting state force the full exponential tree
    net = validate(CounterNet(
        "wide", 1, frozenset({"x"}), ("p",), frozenset({"p"}), frozenset(),
        (Transition("p", "x", (0,), "p"), Transition("p", "x", (1,), "p")),
    ))
    with pytest.raises(EnumerationCapError):
        accepts_naive(net, ("x",) * 30, cap=100)


@settings(max_examples=150)
@given(st.integers(0, 2 ** 31), st.lists(st.sampled_from("ab#c"), max_size=7))
def test_accepts_matches_naive_on_random_nets(seed, letters):
    rng = random.Random(seed)
    net = random_cn(rng, dim=rng.randint(0, 2), max_states=4, letters=("a", "b", "#", "c"))
    w = tuple(letters)
    assert accepts(net, w) == accepts_naive(net, w)


# --- run enumeration ----------------------------------------------------

def test_enumerate_accepting_runs_counts_split_choices():
    p = build_partition_net()
    enum = enumerate_accepting_runs(p, word("a#a#bc"))
    assert len(enum.runs) == 2  # one bank each way round
    assert not enum.truncated
    for run in enum.runs:
        assert is_valid_n_run(p, run, (0, 0))
        assert run.word() == word("a#a#bc")


def test_enumerate_accepting_runs_none_for_rejected_word():
    p = build_partition_net()
    enum = enumerate_accepting_runs(p, word("a#bc"))
    assert enum.runs == ()
    assert not enum.truncated


def test_enumerate_runs_cap_and_truncation():
    net = validate(CounterNet(
        "wide", 0, frozenset({"x"}), ("p",), frozenset({"p"}), frozenset({"p"}),
        (Transition("p", "x", (), "p"), Transition("p", "x", (), "p")),
    ))
    full = enumerate_runs(net, ("x",) * 3, "p", (), accepting_only=True, cap=8)
    assert len(full.runs) == 8
    assert not full.truncated  # exactly at the cap, nothing dropped
    cut = enumerate_runs(net, ("x",) * 3, "p", (), accepting_only=True, cap=7)
    assert len(cut.runs) == 7
    assert cut.truncated


def test_enumerate_runs_respects_declaration_order():
    net = validate(CounterNet(
        "ord", 0, frozenset({"x"}), ("p", "q", "r"), frozenset({"p"}),
        frozenset({"q", "r"}),
        (Transition("p", "x", (), "q"), Transition("p", "x", (), "r")),
    ))
    enum = enumerate_runs(net, ("x",), "p", (), accepting_only=True, cap=10)
    assert [r.configs[-1].state for r in enum.runs] == ["q", "r"]


def test_replay_golden_routed_run():
    p = build_partition_net()
    # the accepted split of the golden member: 15 a's pay the b block,
    # the other 10 + 20 pay the c block
    trail = []
    by = {(t.source, t.letter, t.target): t for t in p.transitions}
    trail += [by[("hub", "a", "bank2")]] + [by[("bank2", "a", "bank2")]] * 9
    trail += [by[("bank2", "#", "hub")]]
    trail += [by[("hub", "a", "bank2")]] + [by[("bank2", "a", "bank2")]] * 19
    trail += [by[("bank2", "#", "hub")]]
    trail += [by[("hub", "a", "bank1")]] + [by[("bank1", "a", "bank1")]] * 14
    trail += [by[("bank1", "#", "hub")]]
    trail += [by[("hub", "b", "drain_b")]] + [by[("drain_b", "b", "drain_b")]] * 14
    trail += [by[("drain_b", "c", "drain_c")]] + [by[("drain_c", "c", "drain_c")]] * 29
    run = replay(p, "hub", (0, 0), trail)
    assert is_valid_n_run(p, run, (0, 0))
    assert run.configs[-1].state == "drain_c"
    assert run.configs[-1].counters == (0, 0)


def test_replay_negative_dip_raises_in_n_regime():
    net = validate(small_net(transitions=(Transition("p", "x", (-1,), "q"),)))
    with pytest.raises(ValueError):
        replay(net, "p", (0,), net.transitions)
    z = replay(net, "p", (0,), net.transitions, regime="Z")
    assert z.configs[-1].counters == (-1,)


def test_is_valid_n_run_rejects_foreign_transition():
    net = validate(small_net())
    other = Transition("p", "x", (2,), "q")
    run = replay(net, "p", (0,), net.transitions)
    fake = run.__class__(run.configs, (other,))
    assert not is_valid_n_run(net, fake, (0,))
