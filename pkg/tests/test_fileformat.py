import pytest

from counternet.analysis import compare_nets_walk
from counternet.core import CounterNet, Transition
from counternet.fileformat import (
    MachineFileError,
    emit_machine_file,
    parse_machine_file,
    parse_word,
)
from counternet.zoo import build_partition_net, build_shared_budget

SAMPLE = """
; a two-counter machine with states declared out of order
cn demo
dim 2
alphabet a b c #
init q0
accept q0 q2
trans q0 a 1 0 q0
trans q0 # 0 0 q1
trans q1 b -1 0 q1
trans q1 c 0 -1 q2
trans q2 c 0 -1 q2
end
"""


def test_parse_sample():
    nets = parse_machine_file(SAMPLE)
    assert len(nets) == 1
    net = nets[0]
    assert net.name == "demo"
    assert net.dimension == 2
    assert net.alphabet == frozenset("abc#")
    assert net.states == ("q0", "q1", "q2")
    assert set(net.initial) == {"q0"}
    assert set(net.accepting) == {"q0", "q2"}
    assert net.transitions[0] == Transition("q0", "a", (1, 0), "q0")


def test_emit_parse_emit_is_stable():
    once = emit_machine_file(parse_machine_file(SAMPLE))
    twice = emit_machine_file(parse_machine_file(once))
    assert once == twice


def test_zoo_nets_round_trip():
    nets = [build_partition_net(), *build_shared_budget()]
    text = emit_machine_file(nets)
    back = parse_machine_file(text)
    assert [n.name for n in back] == [n.name for n in nets]
    assert emit_machine_file(back) == text
    for orig, parsed in zip(nets, back):
        rep = compare_nets_walk(orig, parsed, max_len=5)
        assert rep.verdict == "equal", orig.name


def test_empty_file_parses_to_nothing():
    assert parse_machine_file("") == []
    assert parse_machine_file("; comments only\n\n  ; more\n") == []


def test_hash_is_a_letter_not_a_comment():
    nets = parse_machine_file(SAMPLE)
    assert "#" in nets[0].alphabet
    # but ';' comments do vanish, even mid-line
    text = SAMPLE.replace("trans q2 c 0 -1 q2", "trans q2 c 0 -1 q2 ; tail loop")
    assert parse_machine_file(text)[0] == nets[0]


def line_error(text):
    with pytest.raises(MachineFileError) as err:
        parse_machine_file(text)
    return err.value


def test_error_effect_arity():
    err = line_error("cn m\ndim 2\nalphabet a\ninit q\naccept q\ntrans q a 1 q\nend\n")
    assert err.line_no == 6
    assert "trans needs" in str(err)


def test_error_trans_before_dim():
    err = line_error("cn m\ntrans q a 1 q\ndim 1\nend\n")
    assert err.line_no == 2


def test_error_duplicate_dim():
    err = line_error("cn m\ndim 1\ndim 2\nend\n")
    assert err.line_no == 3


def test_error_bad_dim_values():
    assert line_error("cn m\ndim x\nend\n").line_no == 2
    assert line_error("cn m\ndim -1\nend\n").line_no == 2
    assert line_error("cn m\ndim 1 2\nend\n").line_no == 2


def test_error_end_without_dim():
    err = line_error("cn m\nend\n")
    assert "no dim" in str(err)


def test_error_unterminated_machine():
    err = line_error("cn m\ndim 1\n")
    assert err.line_no == 1
    assert "missing 'end'" in str(err)


def test_error_nested_machine():
    err = line_error("cn m\ndim 1\ncn n\n")
    assert err.line_no == 3


def test_error_keyword_outside_block():
    err = line_error("dim 1\n")
    assert err.line_no == 1
    assert "outside" in str(err)


def test_error_unknown_keyword():
    err = line_error("cn m\ndim 1\nstates q p\nend\n")
    assert err.line_no == 3


def test_error_non_integer_effect():
    err = line_error("cn m\ndim 1\nalphabet a\ninit q\ntrans q a one q\nend\n")
    assert err.line_no == 5
    assert "integers" in str(err)


def test_error_invalid_net_reported_at_end():
    # letter x is not in the alphabet; validation runs when the block closes
    err = line_error("cn m\ndim 1\nalphabet a\ninit q\naccept q\ntrans q x 1 q\nend\n")
    assert err.line_no == 7


def test_emit_refuses_unwritable_tokens():
    bad = CounterNet(
        name="two words", dimension=0, alphabet=frozenset("a"),
        states=("q",), initial=frozenset({"q"}), accepting=frozenset({"q"}),
        transitions=(Transition("q", "a", (), "q"),))
    with pytest.raises(ValueError):
        emit_machine_file([bad])
    semi = CounterNet(
        name="ok", dimension=0, alphabet=frozenset("a"),
        states=("q;",), initial=frozenset({"q;"}), accepting=frozenset(),
        transitions=())
    with pytest.raises(ValueError):
        emit_machine_file([semi])


def test_emit_zero_dim_transitions():
    net = parse_machine_file("cn m\ndim 0\nalphabet a\ninit q\naccept q\ntrans q a q\nend\n")[0]
    assert net.transitions == (Transition("q", "a", (), "q"),)
    assert "trans q a q" in emit_machine_file([net])


# --- word notation --------------------------------------------------------------

def test_parse_word_examples():
    assert parse_word("a^3 # b^2 c") == ("a", "a", "a", "#", "b", "b", "c")
    assert parse_word("a b a") == ("a", "b", "a")
    assert parse_word("b_1^2 c") == ("b_1", "b_1", "c")
    assert parse_word("a^0 b") == ("b",)
    assert parse_word("") == ()
    assert parse_word("   ") == ()


def test_parse_word_caret_token_is_literal():
    # no base before the caret, so the token is taken as a letter
    assert parse_word("^3") == ("^3",)


def test_parse_word_errors():
    with pytest.raises(ValueError):
        parse_word("a^b")
    with pytest.raises(ValueError):
        parse_word("a^")
    with pytest.raises(ValueError):
        parse_word("a^-2")
