"""Word rewriting into involution tokens."""
import pytest

from cremona_involutions.pieces import get_piece
from cremona_involutions.reducer import (TOKEN_KINDS, ReductionError, free_reduce, reduce_to_involutions,
                                         rewrite_via_piece, rule_for, split_at_p2)
from cremona_involutions.sarkisov import TABLE_RULES, parse_word

CASE_IV = "P2 -2,1-> D8 -3,1-> D6 -3,3-> D6 -1,3-> D8 -1,2-> P2"


@pytest.mark.parametrize("text", sorted(TABLE_RULES))
def test_every_table_word_reduces(text):
    red = reduce_to_involutions(text)
    assert red.tokens and all(t.kind in TOKEN_KINDS for t in red.tokens)
    for s in red.all_steps():
        assert s.decreasing()
    # the trace is serializable and names the assumptions used
    d = red.to_json()
    assert set(d) >= {"steps", "tokens", "assumptions"}


@pytest.mark.parametrize("text", sorted(TABLE_RULES))
def test_inverse_words_reduce(text):
    red = reduce_to_involutions(parse_word(text).inverse())
    assert all(t.kind in TOKEN_KINDS for t in red.tokens)


def test_f2_route_for_case_iv():
    plain = reduce_to_involutions(CASE_IV)
    f2 = reduce_to_involutions(CASE_IV, field="f2")
    assert [t.kind for t in f2.tokens][0] == "already-involution"
    assert [t.kind for t in plain.tokens] != [t.kind for t in f2.tokens]


def test_concatenated_word_splits_at_p2():
    w = parse_word("P2 -2,1-> D8 -1,2-> P2 -3,3-> P2")
    assert [str(x) for x in split_at_p2(w)] == ["P2 -2,1-> D8 -1,2-> P2", "P2 -3,3-> P2"]
    red = reduce_to_involutions(w)
    assert red.events and len(red.tokens) == 4


def test_empty_word():
    assert reduce_to_involutions("P2").tokens == []


def test_rules():
    assert rule_for(parse_word("P2 -3,3-> P2")) == "Q1"
    assert rule_for(parse_word(CASE_IV)) == "case-iv"


def test_piece_rewrite_keeps_endpoints_and_shortens():
    w = parse_word("P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2")
    out = rewrite_via_piece(w, get_piece("<P2,2,3>"), 0, 4)
    assert out.start == w.start and out.end == w.end and out.sl < w.sl


def test_free_reduce_is_a_witness_tool():
    w = parse_word("P2 -2,1-> D8 -1,2-> P2")
    assert free_reduce(w + w.inverse()).sl == 0


def test_not_closed_word_rejected():
    with pytest.raises(ReductionError):
        reduce_to_involutions("P2 -2,1-> D8")
