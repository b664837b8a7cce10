from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class MatrixPoint(BaseModel):
    """A d-tuple Z = (Z_1, ..., Z_d) of n×n matrices, a point of the NC ball when strict."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrices: tuple[np.ndarray, ...] = Field(..., min_length=1)

    @field_validator("matrices", mode="before")
    @classmethod
    def _as_square_stack(cls, matrices) -> tuple[np.ndarray, ...]:
        arrays = tuple(np.atleast_2d(np.asarray(m, dtype=complex)) for m in matrices)
        shapes = {a.shape for a in arrays}
        if len(shapes) != 1:
            raise ValueError(f"all coordinates must share one shape, got {sorted(shapes)}")
        (shape,) = shapes
        if shape[0] != shape[1]:
            raise ValueError(f"coordinates must be square, got {shape}")
        return arrays

    @classmethod
    def from_scalars(cls, z: Sequence[complex]) -> "MatrixPoint":
        return cls(matrices=tuple(np.array([[complex(zk)]]) for zk in z))

    @property
    def d(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def row_norm(self) -> float:
        """Operator norm of the row [Z_1 ... Z_d]."""
        return float(np.linalg.norm(np.hstack(self.matrices), 2))

    @property
    def is_strict(self) -> bool:
        return self.row_norm < 1.0

    def stacked(self) -> np.ndarray:
        return np.stack(self.matrices)


class KernelEvaluation(BaseModel):
    """A truncated series value with a guaranteed operator-norm error bound."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: np.ndarray
    tail_bound: float = Field(..., ge=0)
    degree: int = Field(..., ge=0)

    @property
    def scalar(self) -> complex:
        if self.value.shape != (1, 1):
            raise ValueError(f"value has shape {self.value.shape}, not 1x1")
        return complex(self.value[0, 0])

    def to_record(self) -> dict:
        return {
            "value_re": self.value.real.tolist(),
            "value_im": self.value.imag.tolist(),
            "tail_bound": self.tail_bound,
            "degree": self.degree,
        }
