"""Truncated full Fock space over d generators.

The truncation keeps words of length <= N.  Shifts annihilate the top level,
so every isometry relation holds on the *interior* (words of length <= N-1).
"""

from logging import getLogger
from pathlib import Path
from typing import Literal, Mapping

import numpy as np
import pandas as pd
import scipy.sparse as sparse
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from nclebesgue.core.errors import NCMeasureError
from nclebesgue.services.freemonoid import (
    basis_size,
    enumerate_words,
    level_offset,
    prefixed_indices,
    suffixed_indices,
    transpose_indices,
    word_index,
    word_lengths,
)
from nclebesgue.types.word import Word

logger = getLogger(__name__)

ShiftFamily = Literal["left", "right"]


class TruncationOverflowError(NCMeasureError): ...


class FockTruncation(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    N: int

    @field_validator("d")
    @classmethod
    def _positive_d(cls, d: int) -> int:
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        return d

    @field_validator("N")
    @classmethod
    def _nonnegative_N(cls, N: int) -> int:
        if N < 0:
            raise ValueError(f"N must be >= 0, got {N}")
        return N

    @property
    def dim(self) -> int:
        return basis_size(self.d, self.N)

    @property
    def interior_dim(self) -> int:
        return level_offset(self.d, self.N)

    @property
    def basis(self) -> list[Word]:
        return enumerate_words(self.d, self.N)

    @property
    def lengths(self) -> np.ndarray:
        return word_lengths(self.d, self.N)

    def index(self, word: Word) -> int:
        if len(word) > self.N:
            raise TruncationOverflowError(f"word {word} longer than truncation level {self.N}")
        return word_index(word, self.d)

    def check_letter(self, k: int) -> None:
        if not 1 <= k <= self.d:
            raise ValueError(f"letter {k} out of range [1, {self.d}]")


class FockVector(BaseModel):
    """f = Σ f̂_α e_α, coefficients in the packed basis order of its truncation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    truncation: FockTruncation
    coefficients: np.ndarray

    @model_validator(mode="after")
    def _length_matches(self) -> "FockVector":
        if self.coefficients.shape != (self.truncation.dim,):
            raise ValueError(
                f"expected {self.truncation.dim} coefficients, got shape {self.coefficients.shape}"
            )
        return self

    @classmethod
    def from_mapping(cls, truncation: FockTruncation, coefficients: Mapping[Word, complex]) -> "FockVector":
        values = np.zeros(truncation.dim, dtype=complex)
        for word, value in coefficients.items():
            values[truncation.index(word)] += value
        return cls(truncation=truncation, coefficients=values)

    def support_length(self) -> int:
        """Largest word length carrying a nonzero coefficient (-1 for the zero vector)."""
        nonzero = np.flatnonzero(self.coefficients)
        if nonzero.size == 0:
            return -1
        return int(self.truncation.lengths[nonzero].max())

    def inner(self, other: "FockVector") -> complex:
        return complex(np.vdot(self.coefficients, other.coefficients))


def basis_vector(word: Word, truncation: FockTruncation) -> FockVector:
    values = np.zeros(truncation.dim, dtype=complex)
    values[truncation.index(word)] = 1.0
    return FockVector(truncation=truncation, coefficients=values)


def _shift_matrix(k: int, truncation: FockTruncation, family: ShiftFamily) -> sparse.csr_matrix:
    truncation.check_letter(k)
    d, N = truncation.d, truncation.N
    letter = Word.of(k)
    rows, cols = [], []
    for length in range(N):
        cols.append(level_offset(d, length) + np.arange(d**length, dtype=np.int64))
        if family == "left":
            rows.append(prefixed_indices(d, length, letter))
        else:
            rows.append(suffixed_indices(d, length, letter))
    row = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    col = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    data = np.ones(row.size, dtype=complex)
    return sparse.csr_matrix((data, (row, col)), shape=(truncation.dim, truncation.dim))


def left_shift_matrix(k: int, truncation: FockTruncation) -> sparse.csr_matrix:
    """L_k e_α = e_{kα}; words of length N are sent to 0."""
    return _shift_matrix(k, truncation, "left")


def right_shift_matrix(k: int, truncation: FockTruncation) -> sparse.csr_matrix:
    """R_k e_α = e_{αk}; words of length N are sent to 0."""
    return _shift_matrix(k, truncation, "right")


def shift_family(truncation: FockTruncation, family: ShiftFamily = "left") -> list[sparse.csr_matrix]:
    return [_shift_matrix(k, truncation, family) for k in range(1, truncation.d + 1)]


def transpose_unitary(truncation: FockTruncation) -> sparse.csr_matrix:
    """Permutation U† e_α = e_{α†}; an involution."""
    perm = transpose_indices(truncation.d, truncation.N)
    cols = np.arange(truncation.dim, dtype=np.int64)
    data = np.ones(truncation.dim, dtype=complex)
    return sparse.csr_matrix((data, (perm, cols)), shape=(truncation.dim, truncation.dim))


def apply_word(
    family: ShiftFamily,
    word: Word,
    vector: FockVector,
    *,
    strict: bool = True,
) -> FockVector:
    """Apply L^w (or R^w) to a vector, with L^w = L_{w_1} ... L_{w_n}.

    When ``|w|`` plus the support length of the vector exceeds N, part of the
    result falls outside the truncation; that raises in strict mode and is
    logged otherwise.
    """
    truncation = vector.truncation
    word.check_alphabet(truncation.d)
    if vector.support_length() + len(word) > truncation.N:
        message = (
            f"{family} word {word} on a vector of support length {vector.support_length()} "
            f"leaves truncation level {truncation.N}"
        )
        if strict:
            raise TruncationOverflowError(message)
        logger.warning(message + "; top-level coefficients are dropped")
    shifts = shift_family(truncation, family)
    values = vector.coefficients
    for letter in reversed(word.letters):
        values = shifts[letter - 1] @ values
    return FockVector(truncation=truncation, coefficients=np.asarray(values, dtype=complex))


def right_multiplier_matrix(
    symbol: Mapping[Word, complex], truncation: FockTruncation
) -> sparse.csr_matrix:
    """Truncated right multiplier Σ_w a_w R^w for a free polynomial symbol.

    With R^w = R_{w_1} ... R_{w_n} one has R^w e_α = e_{α w†}; the result
    commutes with every left shift away from the top level.
    """
    shifts = shift_family(truncation, "right")
    identity = sparse.identity(truncation.dim, dtype=complex, format="csr")
    total = sparse.csr_matrix((truncation.dim, truncation.dim), dtype=complex)
    for word, coefficient in symbol.items():
        word.check_alphabet(truncation.d)
        term = identity
        for letter in reversed(word.letters):
            term = shifts[letter - 1] @ term
        total = total + coefficient * term
    return total.tocsr()


def symbol_degree(symbol: Mapping[Word, complex]) -> int:
    return max((len(word) for word, value in symbol.items() if value != 0), default=0)


def sparse_to_frame(matrix: sparse.spmatrix) -> pd.DataFrame:
    coo = sparse.coo_matrix(matrix)
    values = np.asarray(coo.data, dtype=complex)
    return pd.DataFrame(
        {"row": coo.row, "col": coo.col, "re": values.real, "im": values.imag}
    )


def export_sparse_csv(matrix: sparse.spmatrix, path: str | Path) -> Path:
    """Coordinate (row, col, re, im) dump of an operator, for debugging."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    sparse_to_frame(matrix).to_csv(path, index=False)
    logger.debug(f"wrote {matrix.nnz} entries to {path}")
    return path
