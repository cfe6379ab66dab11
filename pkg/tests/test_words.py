import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelian_words.words import (
    BinaryWord,
    LatticePath,
    WordParseError,
    parse_word,
    prefix_sums,
    serialize_word,
)

words = st.lists(st.integers(0, 1), max_size=1000).map(BinaryWord)


def test_parse_table_row():
    w = parse_word("0011100011")
    assert len(w) == 10
    assert list(w) == [0, 0, 1, 1, 1, 0, 0, 0, 1, 1]


def test_parse_empty():
    assert len(parse_word("")) == 0


def test_parse_error_names_position():
    with pytest.raises(WordParseError) as info:
        parse_word("01a")
    assert info.value.position == 3
    assert "position 3" in str(info.value)


def test_parse_skips_whitespace():
    text = "0000000000000000010000000110010000111010001111011001111111011\n1\t11111111111111 \r\n"
    assert len(parse_word(text)) == 76


@pytest.mark.parametrize("bad", ["2", "0 1x", "01\x0b", "０"])
def test_parse_rejects_other_characters(bad):
    with pytest.raises(WordParseError):
        parse_word(bad)


def test_prefix_sums_lattice_path_example():
    path = prefix_sums(parse_word("100110001"))
    assert path.sums == (0, 1, 1, 1, 2, 3, 3, 3, 3, 4)
    assert path.points == [(0, 0), (1, 1), (2, 1), (3, 1), (4, 2), (5, 3),
                           (6, 3), (7, 3), (8, 3), (9, 4)]


@pytest.mark.parametrize("text, sums", [("", (0,)), ("111", (0, 1, 2, 3))])
def test_prefix_sums_trivial(text, sums):
    assert prefix_sums(parse_word(text)).sums == sums


def test_serialize():
    assert serialize_word(parse_word("010")) == "010"
    assert serialize_word(BinaryWord()) == ""
    assert str(BinaryWord([1, 0])) == "10"


def test_word_rejects_non_binary_letters():
    with pytest.raises(ValueError):
        BinaryWord([0, 2])


def test_letter_is_one_based():
    w = parse_word("01")
    assert w.letter(1) == 0 and w.letter(2) == 1
    with pytest.raises(IndexError):
        w.letter(0)


def test_lexicographic_order():
    assert parse_word("0011") < parse_word("0100")
    assert sorted(map(parse_word, ["11", "01", "10", "00"])) == list(map(parse_word, ["00", "01", "10", "11"]))


def test_lattice_path_rejects_bad_steps():
    with pytest.raises(ValueError):
        LatticePath([0, 2])
    with pytest.raises(ValueError):
        LatticePath([1, 1])


@given(words)
def test_round_trip(w):
    assert parse_word(serialize_word(w)) == w


@given(words)
def test_path_invariants(w):
    path = prefix_sums(w)
    assert len(path) == len(w) + 1
    assert path[0] == 0
    assert all(path[i] - path[i - 1] in (0, 1) for i in range(1, len(path)))
    assert path[len(w)] == w.ones()
    assert path.word() == w


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=200).map(BinaryWord), st.data())
def test_ones_between_matches_recount(w, data):
    m = data.draw(st.integers(1, len(w)))
    n = data.draw(st.integers(m, len(w)))
    path = prefix_sums(w)
    assert path.ones_between(m, n) == sum(w.letter(j) for j in range(m, n + 1))


def test_complement():
    assert parse_word("0110").complement() == parse_word("1001")
