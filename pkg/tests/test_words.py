from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from longcf.words import (
    Mat2,
    NonTerminating,
    NotPalindromic,
    eval_finite,
    find_period,
    is_palindrome,
    lemma1_check,
    matrix_of_word,
    normalize,
    reverse,
)

pos_words = st.lists(st.integers(1, 9), min_size=1, max_size=12).map(tuple)
formal_words = st.lists(st.integers(-6, 9), min_size=1, max_size=10).map(tuple)


def palindromes(max_len=9):
    def build(half, mid):
        return tuple(half) + tuple(mid) + tuple(reversed(half))
    return st.builds(build, st.lists(st.integers(1, 9), min_size=1, max_size=max_len // 2),
                     st.lists(st.integers(1, 9), max_size=1)).filter(lambda w: 2 <= len(w) <= max_len)


def test_matrix_examples():
    assert matrix_of_word((1, 2, 1)).rows() == ((4, 3), (3, 2))
    assert matrix_of_word(()) == Mat2.identity()


@given(pos_words)
def test_determinant(word):
    assert matrix_of_word(word).det() == (-1) ** len(word)


@given(pos_words)
def test_reversal_is_transpose(word):
    assert matrix_of_word(reverse(word)) == matrix_of_word(word).transpose()


@given(pos_words, pos_words)
def test_matrix_is_homomorphism(x, y):
    assert matrix_of_word(x + y) == matrix_of_word(x) @ matrix_of_word(y)


@given(pos_words)
def test_matrix_columns_are_convergents(word):
    # first column over second gives the value of the word
    m = matrix_of_word(word)
    assert Fraction(m.m11, m.m21) == eval_finite(word)


def test_palindrome_matrix_examples():
    assert lemma1_check((1, 2, 1)) == (4, 3, 2, True)
    w, u, v, ok = lemma1_check((4, 1, 2, 4, 2, 1, 4))
    assert ok and w == 22 * v
    with pytest.raises(NotPalindromic):
        lemma1_check((1, 2))
    with pytest.raises(ValueError):
        lemma1_check((3,))
    with pytest.raises(ValueError):
        lemma1_check((0, 1, 0))


@given(palindromes())
def test_random_palindromes_pass_fixed_point(word):
    w, u, v, ok = lemma1_check(word)
    m = matrix_of_word(word)
    assert m.is_symmetric() and (m.m11, m.m12, m.m22) == (w, u, v)
    assert ok


def test_eval_finite():
    assert eval_finite((1, 2, 0, 3, 4)) == Fraction(25, 21)
    assert eval_finite((3, -2)) == Fraction(5, 2)
    with pytest.raises(ZeroDivisionError):
        eval_finite((1, 0, 0))
    with pytest.raises(ValueError):
        eval_finite(())


@pytest.mark.parametrize("word,expected", [
    ((1, 2, 0, 3, 4), (1, 5, 4)),
    ((3, -2), (2, 1, 1)),
    ((5,), (5,)),
    ((2, 3, 0), (2,)),
])
def test_normalize_examples(word, expected):
    assert normalize(word) == expected


def _value(word):
    try:
        return eval_finite(word)
    except ZeroDivisionError:
        return None


@given(formal_words)
def test_normalize_preserves_value(word):
    before = _value(word)
    assume(before is not None)
    try:
        out = normalize(word)
    except NonTerminating:
        assume(False)
    assert all(a >= 1 for a in out[1:])
    assert eval_finite(out) == before


@given(pos_words)
def test_normalize_fixes_regular_words(word):
    assert normalize(word) == word


def test_normalize_budget():
    with pytest.raises(NonTerminating):
        normalize((5, 0, 1, 0, 1, 0, 1, 0, 1), budget=3)
    assert normalize((5, 0, 1, 0, 1, 0, 1, 0, 1), budget=4) == (9,)


def test_find_period():
    assert find_period((4, 1, 2, 4, 2, 1, 8, 1, 2, 4, 2, 1, 8)) == (4, (1, 2, 4, 2, 1, 8))
    assert find_period((4, 1, 2)) is None
    assert find_period(()) is None


@given(pos_words)
def test_palindrome_helper(word):
    assert is_palindrome(word + reverse(word))
