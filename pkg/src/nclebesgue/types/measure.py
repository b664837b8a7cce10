from pathlib import Path
from typing import Annotated, Literal, Mapping, Optional, Union

import numpy as np
import pandas as pd
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)

from nclebesgue.core.errors import DepthExceededError
from nclebesgue.services.freemonoid import basis_size, enumerate_words, word_index
from nclebesgue.types.word import Word

# Above this many words a table is exported by its stored entries only.
MAX_DENSE_EXPORT = 100_000


def _to_complex(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pairs are [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    return complex(value)


ComplexValue = Annotated[
    complex,
    BeforeValidator(_to_complex),
    PlainSerializer(lambda z: [z.real, z.imag], return_type=list),
]


class MomentTable(BaseModel):
    """An NC measure given by its moments μ(L^α), |α| <= depth.

    Only nonzero moments are stored; a missing word reads as 0.  Adjoint
    moments are implicit: μ((L^α)*) = conj(μ(L^α)).
    """

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=1)
    depth: int = Field(..., ge=0)
    moments: dict[Word, complex] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_words(self) -> "MomentTable":
        for word in self.moments:
            word.check_alphabet(self.d)
            if len(word) > self.depth:
                raise ValueError(f"moment for {word} exceeds depth {self.depth}")
        return self

    @classmethod
    def from_mapping(
        cls, d: int, depth: int, moments: Mapping[Word, complex], atol: float = 0.0
    ) -> "MomentTable":
        kept = {
            word: complex(value)
            for word, value in moments.items()
            if abs(value) > atol and len(word) <= depth
        }
        return cls(d=d, depth=depth, moments=kept)

    @classmethod
    def zero(cls, d: int, depth: int) -> "MomentTable":
        return cls(d=d, depth=depth)

    @classmethod
    def from_array(cls, d: int, depth: int, values: np.ndarray) -> "MomentTable":
        """Inverse of :meth:`to_array`: ``values`` is in packed word order."""
        values = np.asarray(values, dtype=complex)
        if values.shape != (basis_size(d, depth),):
            raise ValueError(
                f"expected {basis_size(d, depth)} moments for d={d}, depth={depth}, got {values.shape}"
            )
        words = enumerate_words(d, depth)
        nonzero = np.flatnonzero(values)
        return cls(d=d, depth=depth, moments={words[i]: complex(values[i]) for i in nonzero})

    def moment(self, word: Word) -> complex:
        if len(word) > self.depth:
            raise DepthExceededError(f"moment of {word} requested beyond depth {self.depth}")
        return self.moments.get(word, 0j)

    def adjoint_moment(self, word: Word) -> complex:
        return self.moment(word).conjugate()

    @property
    def mass(self) -> float:
        return self.moments.get(Word(), 0j).real

    @property
    def support(self) -> list[Word]:
        return sorted(self.moments)

    def truncate(self, depth: int) -> "MomentTable":
        if depth > self.depth:
            raise DepthExceededError(f"cannot extend a depth-{self.depth} table to depth {depth}")
        return MomentTable.from_mapping(self.d, depth, self.moments)

    def to_array(self, N: int | None = None) -> np.ndarray:
        N = self.depth if N is None else N
        if N > self.depth:
            raise DepthExceededError(f"dense moments to length {N} exceed depth {self.depth}")
        values = np.zeros(basis_size(self.d, N), dtype=complex)
        for word, value in self.moments.items():
            if len(word) <= N:
                values[word_index(word, self.d)] = value
        return values

    def max_abs_difference(self, other: "MomentTable", depth: int | None = None) -> float:
        depth = min(self.depth, other.depth) if depth is None else depth
        words = {w for w in (*self.moments, *other.moments) if len(w) <= depth}
        return max((abs(self.moment(w) - other.moment(w)) for w in words), default=0.0)

    def to_frame(self) -> pd.DataFrame:
        if basis_size(self.d, self.depth) <= MAX_DENSE_EXPORT:
            words = enumerate_words(self.d, self.depth)
        else:
            words = self.support
        values = np.array([self.moments.get(w, 0j) for w in words], dtype=complex)
        return pd.DataFrame(
            {
                "word": [w.format(self.d) for w in words],
                "re": values.real,
                "im": values.imag,
            }
        )

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        return path


class Atom(BaseModel):
    point: ComplexValue
    weight: float = Field(..., gt=0)

    @field_validator("point")
    @classmethod
    def _on_circle(cls, point: complex) -> complex:
        if abs(abs(point) - 1.0) > 1e-9:
            raise ValueError(f"atom {point} is not on the unit circle")
        return point


class ClassicalMeasureSpec(BaseModel):
    """A circle measure w(θ) dθ/2π + Σ c_j δ_{ζ_j}.

    w(θ) = cosine[0] + Σ_{k>=1} cosine[k] cos kθ + sine[k-1] sin kθ.  An empty
    ``cosine`` list means no absolutely continuous part.
    """

    cosine: list[float] = Field(default_factory=list)
    sine: list[float] = Field(default_factory=list)
    atoms: list[Atom] = Field(default_factory=list)

    @property
    def degree(self) -> int:
        return max(len(self.cosine) - 1, len(self.sine), 0)

    @property
    def has_density(self) -> bool:
        return any(c != 0 for c in self.cosine) or any(s != 0 for s in self.sine)

    def density(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        values = np.zeros_like(theta)
        for k, a in enumerate(self.cosine):
            values += a * np.cos(k * theta)
        for k, b in enumerate(self.sine, start=1):
            values += b * np.sin(k * theta)
        return values

    def density_part(self) -> "ClassicalMeasureSpec":
        return ClassicalMeasureSpec(cosine=self.cosine, sine=self.sine)

    def atomic_part(self) -> "ClassicalMeasureSpec":
        return ClassicalMeasureSpec(atoms=self.atoms)


class _SpecBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    depth: int = Field(8, ge=0)
    # Gram level used when the spec is checked on its own; defaults to depth.
    level: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def _level_within_depth(self):
        if self.level is not None and self.level > self.depth:
            raise ValueError(f"level {self.level} exceeds depth {self.depth}")
        return self

    @property
    def check_level(self) -> int:
        return self.depth if self.level is None else self.level


class VacuumSpec(_SpecBase):
    kind: Literal["vacuum"] = "vacuum"
    d: int = Field(2, ge=1)


class VectorStateSpec(_SpecBase):
    """m_{x,y}(L^α) = ⟨x, L^α y⟩; ``y`` defaults to ``x``."""

    kind: Literal["vector_state"] = "vector_state"
    d: int = Field(2, ge=1)
    x: dict[str, ComplexValue] = Field(..., min_length=1)
    y: Optional[dict[str, ComplexValue]] = None


class ScalarPointSpec(_SpecBase):
    kind: Literal["scalar_point"] = "scalar_point"
    point: list[ComplexValue] = Field(..., min_length=1)


class ClassicalSpec(_SpecBase):
    kind: Literal["classical"] = "classical"
    measure: ClassicalMeasureSpec


class SemicircleSpec(_SpecBase):
    kind: Literal["semicircle"] = "semicircle"
    upper: bool = True


class TableSpec(_SpecBase):
    """Explicit moments; no positivity is implied."""

    kind: Literal["table"] = "table"
    d: int = Field(2, ge=1)
    moments: dict[str, ComplexValue]


class SumSpec(_SpecBase):
    kind: Literal["sum"] = "sum"
    terms: list["MeasureSpec"] = Field(..., min_length=1)
    weights: Optional[list[float]] = None

    @model_validator(mode="after")
    def _weights_match(self) -> "SumSpec":
        if self.weights is not None:
            if len(self.weights) != len(self.terms):
                raise ValueError("weights and terms differ in length")
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be >= 0")
        return self


MeasureSpec = Annotated[
    Union[
        VacuumSpec,
        VectorStateSpec,
        ScalarPointSpec,
        ClassicalSpec,
        SemicircleSpec,
        TableSpec,
        SumSpec,
    ],
    Field(discriminator="kind"),
]

SumSpec.model_rebuild()
