from itertools import product

import numpy as np
import pytest

from nclebesgue.services.freemonoid import (
    basis_size,
    concat,
    enumerate_words,
    level_offset,
    prefixed_indices,
    reduce_pair,
    suffixed_indices,
    transpose,
    transpose_indices,
    word_at,
    word_index,
    word_lengths,
)
from nclebesgue.types.word import PairReduction, Word


def w(text: str, d: int = 2) -> Word:
    return Word.parse(text, d)


def test_enumerate_words_degree_lex():
    assert [x.format() for x in enumerate_words(2, 2)] == ["e", "1", "2", "11", "12", "21", "22"]
    assert [x.format() for x in enumerate_words(1, 3)] == ["e", "1", "11", "111"]
    assert len(enumerate_words(3, 2)) == 13


@pytest.mark.parametrize("d, N", [(1, 0), (1, 7), (2, 0), (2, 5), (3, 3), (11, 2)])
def test_basis_size_matches_enumeration(d, N):
    words = enumerate_words(d, N)
    expected = N + 1 if d == 1 else (d ** (N + 1) - 1) // (d - 1)
    assert len(words) == basis_size(d, N) == expected
    lengths = [len(x) for x in words]
    assert lengths == sorted(lengths)
    np.testing.assert_array_equal(word_lengths(d, N), lengths)


def test_word_index_is_position_in_enumeration():
    words = enumerate_words(3, 3)
    for position, word in enumerate(words):
        assert word_index(word, 3) == position
        assert word_at(position, 3) == word


def test_negative_arguments_rejected():
    with pytest.raises(ValueError):
        enumerate_words(0, 2)
    with pytest.raises(ValueError):
        enumerate_words(2, -1)
    with pytest.raises(ValueError):
        word_at(-1, 2)


def test_concat_and_unit():
    assert concat(w("12"), w("2")) == w("122")
    assert concat(Word(), w("21")) == w("21")
    assert concat(w("1"), Word()) == w("1")


def test_transpose():
    assert transpose(w("12")) == w("21")
    assert transpose(Word()) == Word()
    assert transpose(w("112")) == w("211")
    for word in enumerate_words(3, 3):
        assert transpose(transpose(word)) == word


def test_transpose_indices_agree_with_transpose():
    perm = transpose_indices(2, 4)
    for word in enumerate_words(2, 4):
        assert perm[word_index(word, 2)] == word_index(transpose(word), 2)


def test_prefixed_and_suffixed_indices():
    d, length = 3, 2
    words = [x for x in enumerate_words(d, length) if len(x) == length]
    prefix = w("21", d)
    np.testing.assert_array_equal(
        prefixed_indices(d, length, prefix), [word_index(prefix + x, d) for x in words]
    )
    np.testing.assert_array_equal(
        suffixed_indices(d, length, prefix), [word_index(x + prefix, d) for x in words]
    )
    assert level_offset(d, 2) == 4


def test_reduce_pair_examples():
    assert reduce_pair(w("1"), w("12")) == PairReduction(kind="right_residual", residual=w("2"))
    assert reduce_pair(w("11"), w("1")) == PairReduction(kind="left_residual", residual=w("1"))
    assert reduce_pair(w("1"), w("2")) == PairReduction.zero()
    assert reduce_pair(w("21"), w("21")) == PairReduction(kind="right_residual", residual=Word())


def test_reduce_pair_mirrors():
    words = enumerate_words(2, 3)
    for alpha, beta in product(words, repeat=2):
        assert reduce_pair(beta, alpha) == reduce_pair(alpha, beta).mirrored()


def test_reduce_pair_of_extension_is_right_residual():
    words = enumerate_words(2, 2)
    for alpha, gamma in product(words, repeat=2):
        reduction = reduce_pair(alpha, concat(alpha, gamma))
        assert reduction.kind == "right_residual"
        assert reduction.residual == gamma


def test_word_serialization():
    assert Word.parse("e") == Word()
    assert Word.parse("121", 2).letters == (1, 2, 1)
    assert Word.of(1, 12, 3).format(12) == "1.12.3"
    assert Word.parse("1.12.3", 12).letters == (1, 12, 3)
    assert Word().format() == "e"
    with pytest.raises(ValueError):
        Word.parse("13", 2)
    with pytest.raises(ValueError):
        Word.of(0)
