import itertools

import pytest
from hypothesis import given, strategies as st

from morphic_conjugacy.words import (
    CODED,
    UNDERLYING,
    Alphabet,
    brute_force_canonical,
    canonical_rotation,
    count_letter,
    distinct_rotations,
    find_occurrences,
    is_rotation_of,
    rotate,
    smallest_period,
)

words5 = st.text(alphabet="01234", min_size=1, max_size=40)


def test_rotate_examples():
    assert rotate("0120301240324", 12) == "4012030124032"
    assert rotate("0120301", 0) == "0120301"
    assert rotate("03", 1) == "30"
    assert rotate("03", 2) == "03"


@pytest.mark.parametrize("k", [-1, 4])
def test_rotate_out_of_range(k):
    with pytest.raises(ValueError):
        rotate("abc", k)


def test_distinct_rotations():
    assert distinct_rotations("03") == {"03", "30"}
    assert distinct_rotations("aa") == {"aa"}
    expected = {("0124" * 2)[k : k + 4] for k in range(4)}
    assert distinct_rotations("0124") == expected
    assert len(expected) == 4
    assert distinct_rotations("abab") == {"abab", "baba"}
    with pytest.raises(ValueError):
        distinct_rotations("")


def test_canonical_rotation_examples():
    assert canonical_rotation("ba") == "ab"
    assert canonical_rotation("30") == "03"
    w = "4012030124032"
    assert canonical_rotation(w) == min(w[k:] + w[:k] for k in range(len(w)))
    with pytest.raises(ValueError):
        canonical_rotation("")


def test_canonical_rotation_respects_declared_order():
    rev = Alphabet.of("edcba")
    assert canonical_rotation("ab", rev) == "ba"
    assert canonical_rotation("abcde", rev) == "eabcd"
    assert brute_force_canonical("abcde", rev) == "eabcd"


@pytest.mark.parametrize("n", range(1, 11))
def test_canonical_matches_brute_force_binary(n):
    for letters in itertools.product("ab", repeat=n):
        w = "".join(letters)
        assert canonical_rotation(w) == brute_force_canonical(w)


@given(words5, st.data())
def test_canonical_is_rotation_invariant(w, data):
    k = data.draw(st.integers(0, len(w)))
    assert canonical_rotation(rotate(w, k)) == canonical_rotation(w)


@given(words5)
def test_rotation_count_divides_length(w):
    assert len(w) % len(distinct_rotations(w)) == 0
    assert len(distinct_rotations(w)) == smallest_period(w)


@given(words5, st.data())
def test_count_letter_rotation_invariant(w, data):
    k = data.draw(st.integers(0, len(w)))
    assert count_letter(rotate(w, k), "1") == count_letter(w, "1")


def test_count_letter():
    assert count_letter("0120301240324", "1") == 2
    assert count_letter("", "1") == 0
    assert count_letter("012030124012032301240323", "1") == 4


def test_find_occurrences():
    assert find_occurrences("abcdeacd", "cd") == [2, 6]
    assert find_occurrences("01", "2") == []
    assert find_occurrences("aaa", "aa") == [0, 1]
    with pytest.raises(ValueError):
        find_occurrences("abc", "")


@given(st.text(alphabet="ab", max_size=30), st.text(alphabet="ab", min_size=1, max_size=4))
def test_find_occurrences_brute_force(hay, needle):
    expected = [i for i in range(len(hay) - len(needle) + 1) if hay[i : i + len(needle)] == needle]
    assert find_occurrences(hay, needle) == expected


def test_alphabet_checks():
    assert UNDERLYING.check("01234") == "01234"
    with pytest.raises(ValueError):
        CODED.check("abz")
    with pytest.raises(ValueError):
        Alphabet.of("aba")
    with pytest.raises(ValueError):
        Alphabet(("ab",))
    assert UNDERLYING != CODED


def test_is_rotation_of():
    assert is_rotation_of("30", "03") == 1
    assert is_rotation_of("03", "03") == 0
    assert is_rotation_of("00", "03") is None
    assert is_rotation_of("0", "03") is None
