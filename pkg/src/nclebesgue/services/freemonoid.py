"""Word arithmetic for the free monoid on d generators.

Words are enumerated in degree-lexicographic order (by length, then
lexicographically by letters).  The position of a word in that order is its
*packed index*; truncating at length N keeps a prefix of the order, so level-N
objects are leading blocks of level-(N+1) objects.
"""

from functools import lru_cache
from itertools import product
from logging import getLogger

import numpy as np

from nclebesgue.types.word import PairReduction, Word

logger = getLogger(__name__)


def _check_d(d: int) -> None:
    if d < 1:
        raise ValueError(f"number of generators must be >= 1, got {d}")


def level_offset(d: int, length: int) -> int:
    """Packed index of the first word of the given length."""
    _check_d(d)
    if d == 1:
        return length
    return (d**length - 1) // (d - 1)


def basis_size(d: int, N: int) -> int:
    """Number of words of length <= N."""
    return level_offset(d, N + 1)


def word_rank(word: Word, d: int) -> int:
    """Position of a word among the words of the same length."""
    rank = 0
    for letter in word.letters:
        rank = rank * d + (letter - 1)
    return rank


def word_index(word: Word, d: int) -> int:
    word.check_alphabet(d)
    return level_offset(d, len(word)) + word_rank(word, d)


def word_at(index: int, d: int) -> Word:
    """Inverse of :func:`word_index`."""
    _check_d(d)
    if index < 0:
        raise ValueError(f"packed index must be >= 0, got {index}")
    length = 0
    while level_offset(d, length + 1) <= index:
        length += 1
    rank = index - level_offset(d, length)
    letters = []
    for _ in range(length):
        rank, digit = divmod(rank, d)
        letters.append(digit + 1)
    return Word(letters=tuple(reversed(letters)))


@lru_cache(maxsize=64)
def _enumerate(d: int, N: int) -> tuple[Word, ...]:
    words: list[Word] = []
    for length in range(N + 1):
        words.extend(Word(letters=letters) for letters in product(range(1, d + 1), repeat=length))
    return tuple(words)


def enumerate_words(d: int, N: int) -> list[Word]:
    """All words of length <= N in degree-lexicographic order."""
    _check_d(d)
    if N < 0:
        raise ValueError(f"maximal length must be >= 0, got {N}")
    return list(_enumerate(d, N))


def concat(a: Word, b: Word) -> Word:
    return a + b


def transpose(word: Word) -> Word:
    return Word(letters=word.letters[::-1])


def reduce_pair(alpha: Word, beta: Word) -> PairReduction:
    """Classify (L^α)* L^β using L_k* L_j = δ_kj I."""
    a, b = alpha.letters, beta.letters
    if len(a) <= len(b) and b[: len(a)] == a:
        return PairReduction(kind="right_residual", residual=Word(letters=b[len(a) :]))
    if len(b) < len(a) and a[: len(b)] == b:
        return PairReduction(kind="left_residual", residual=Word(letters=a[len(b) :]))
    return PairReduction.zero()


def level_ranks(d: int, length: int) -> np.ndarray:
    return np.arange(d**length, dtype=np.int64)


def prefixed_indices(d: int, length: int, prefix: Word) -> np.ndarray:
    """Packed indices of ``prefix·α`` for all α of the given length, in rank order of α."""
    shift = d**length
    return level_offset(d, length + len(prefix)) + word_rank(prefix, d) * shift + level_ranks(d, length)


def suffixed_indices(d: int, length: int, suffix: Word) -> np.ndarray:
    """Packed indices of ``α·suffix`` for all α of the given length, in rank order of α."""
    shift = d ** len(suffix)
    return level_offset(d, length + len(suffix)) + level_ranks(d, length) * shift + word_rank(suffix, d)


def transpose_indices(d: int, N: int) -> np.ndarray:
    """Permutation sending the packed index of α to the packed index of α†."""
    perm = np.empty(basis_size(d, N), dtype=np.int64)
    for length in range(N + 1):
        ranks = level_ranks(d, length)
        reversed_ranks = np.zeros_like(ranks)
        remaining = ranks.copy()
        for _ in range(length):
            remaining, digit = np.divmod(remaining, d)
            reversed_ranks = reversed_ranks * d + digit
        start = level_offset(d, length)
        perm[start + ranks] = start + reversed_ranks
    return perm


def word_lengths(d: int, N: int) -> np.ndarray:
    """Length of each basis word, in packed order."""
    return np.concatenate(
        [np.full(d**length, length, dtype=np.int64) for length in range(N + 1)]
    )
