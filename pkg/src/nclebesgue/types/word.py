from typing import Literal

from pydantic import BaseModel, ConfigDict, field_validator

EMPTY_WORD_TOKEN = "e"


class Word(BaseModel):
    """An element of the free monoid on d letters; the empty word is the unit."""

    model_config = ConfigDict(frozen=True)

    letters: tuple[int, ...] = ()

    @field_validator("letters")
    @classmethod
    def _letters_are_positive(cls, letters: tuple[int, ...]) -> tuple[int, ...]:
        if any(letter < 1 for letter in letters):
            raise ValueError(f"letters must be >= 1, got {letters}")
        return letters

    @classmethod
    def of(cls, *letters: int) -> "Word":
        return cls(letters=tuple(letters))

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "Word":
        text = text.strip()
        if text in ("", EMPTY_WORD_TOKEN, "∅"):
            return cls()
        if "." in text or (d is not None and d > 9):
            letters = tuple(int(part) for part in text.split("."))
        else:
            letters = tuple(int(ch) for ch in text)
        word = cls(letters=letters)
        if d is not None:
            word.check_alphabet(d)
        return word

    def check_alphabet(self, d: int) -> "Word":
        bad = [letter for letter in self.letters if letter > d]
        if bad:
            raise ValueError(f"word {self.letters} uses letters {bad} outside [1, {d}]")
        return self

    def format(self, d: int | None = None) -> str:
        if not self.letters:
            return EMPTY_WORD_TOKEN
        if (d is not None and d > 9) or any(letter > 9 for letter in self.letters):
            return ".".join(str(letter) for letter in self.letters)
        return "".join(str(letter) for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(letters=self.letters + other.letters)

    def __lt__(self, other: "Word") -> bool:
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Word({self.format()!r})"


class PairReduction(BaseModel):
    """How (L^α)* L^β collapses under the Cuntz-Toeplitz relations.

    ``right_residual`` γ means (L^α)* L^β = L^γ (β = αγ); ``left_residual`` γ
    means (L^α)* L^β = (L^γ)* (α = βγ, γ nonempty); ``zero`` otherwise.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["right_residual", "left_residual", "zero"]
    residual: Word | None = None

    @classmethod
    def zero(cls) -> "PairReduction":
        return cls(kind="zero")

    def mirrored(self) -> "PairReduction":
        if self.kind == "zero":
            return self
        if self.kind == "left_residual":
            return PairReduction(kind="right_residual", residual=self.residual)
        if self.residual is not None and len(self.residual) == 0:
            return self
        return PairReduction(kind="left_residual", residual=self.residual)
