from pathlib import Path

import numpy as np
import pytest

from nclebesgue.services.ncmeasure import add, from_scalar_point, nc_lebesgue
from nclebesgue.types.measure import MomentTable

MEASURES_DIR = Path(__file__).resolve().parents[1] / "data" / "measures"


@pytest.fixture
def measures_dir() -> Path:
    return MEASURES_DIR


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def lebesgue_d2() -> MomentTable:
    return nc_lebesgue(2, 8)


@pytest.fixture
def dirac_10() -> MomentTable:
    """Point mass at the boundary point (1, 0), deep enough for series of degree 60."""
    return from_scalar_point((1.0, 0.0), 60)


@pytest.fixture
def m_plus_dirac(dirac_10) -> MomentTable:
    return add(nc_lebesgue(2, 60), dirac_10)


@pytest.fixture
def out_dir(tmp_path, monkeypatch) -> Path:
    monkeypatch.setenv("NCLEBESGUE_OUTPUT_DIR", str(tmp_path))
    return tmp_path
