import logging

import numpy as np

from nclebesgue.services.transforms import cayley_to_schur, herglotz_eval
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.point import MatrixPoint
from nclebesgue.types.reports import CheckResult

logger = logging.getLogger(__name__)

GRID_RADIUS = 0.9
GRID_SIZE = 20
# Rounding slack on top of the proven tail bound; at z_1 = 0.9 the bound is attained.
HERGLOTZ_SLACK = 1e-9
CAYLEY_TOL = 1e-8


def scalar_grid(radius: float = GRID_RADIUS, size: int = GRID_SIZE) -> np.ndarray:
    return np.linspace(-radius, radius, size)


def run_transform_checks(
    measure: MomentTable, degree: int, grid: np.ndarray | None = None
) -> list[CheckResult]:
    """H(z) against (1 + z_1)/(1 − z_1) and B(z) against z_1 along the line z_2 = 0."""
    grid = scalar_grid() if grid is None else grid
    herglotz_rows = []
    cayley_rows = []
    for z1 in grid:
        point = MatrixPoint.from_scalars([z1, 0.0])
        herglotz = herglotz_eval(measure, point, degree)
        exact = (1 + z1) / (1 - z1)
        herglotz_rows.append(
            {
                "z1": float(z1),
                "error": abs(herglotz.scalar - exact),
                "tail_bound": herglotz.tail_bound,
            }
        )
        schur = cayley_to_schur(measure, point, degree)
        cayley_rows.append(
            {"z1": float(z1), "error": abs(schur.scalar - z1), "tail_bound": schur.tail_bound}
        )

    herglotz_ok = all(r["error"] <= r["tail_bound"] + HERGLOTZ_SLACK for r in herglotz_rows)
    cayley_ok = all(r["error"] <= CAYLEY_TOL + r["tail_bound"] for r in cayley_rows)
    herglotz_worst = max(r["error"] for r in herglotz_rows)
    cayley_worst = max(r["error"] for r in cayley_rows)
    logger.info(
        f"Herglotz grid max error {herglotz_worst:.3e}, Cayley grid max error {cayley_worst:.3e}"
    )
    return [
        CheckResult(
            name="herglotz_grid",
            passed=herglotz_ok,
            value=herglotz_worst,
            detail={"degree": degree, "points": herglotz_rows},
        ),
        CheckResult(
            name="cayley_grid",
            passed=cayley_ok,
            value=cayley_worst,
            bound=CAYLEY_TOL,
            detail={"degree": degree, "points": cayley_rows},
        ),
    ]
