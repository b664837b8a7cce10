import os
from pathlib import Path
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator

load_dotenv()

OUTPUT_DIR_ENV = "NCLEBESGUE_OUTPUT_DIR"

Command = Literal["moments", "positivity", "diagnose", "herglotz", "decompose", "oracle", "example8"]


def default_output_dir() -> Path:
    return Path(os.getenv(OUTPUT_DIR_ENV, "outputs"))


class RunConfig(BaseModel):
    command: Command
    spec: Optional[Path] = None
    # Unset: the spec's own level (its depth when the spec sets none).
    level: Optional[int] = Field(None, ge=0)
    depth: Optional[int] = Field(None, ge=0)
    out_depth: Optional[int] = Field(None, ge=0)
    threshold: Optional[float] = None
    tol: float = Field(1e-10, gt=0)
    degree: int = Field(60, ge=0)
    seed: int = 0
    samples: int = Field(100, ge=1)
    point: Optional[list[complex]] = None
    schedule: list[int] = Field(default_factory=lambda: [16, 32, 64, 128], min_length=1)
    out: Path = Field(default_factory=default_output_dir)
    plot: bool = False

    @model_validator(mode="after")
    def _check_ranges(self) -> "RunConfig":
        if self.threshold is not None and not 0 < self.threshold < 1:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")
        top = min(self.schedule) if self.command == "oracle" else self.level
        if self.out_depth is not None and top is not None and self.out_depth > top - 1:
            raise ValueError(f"out_depth {self.out_depth} must be <= {top - 1}")
        if self.spec is not None and not self.spec.exists():
            raise ValueError(f"spec file {self.spec} does not exist")
        if self.command not in ("example8",) and self.spec is None:
            raise ValueError(f"command {self.command} needs --spec")
        return self
