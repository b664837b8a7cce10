"""One-variable oracle: circle measures with trigonometric-polynomial densities and atoms.

For d = 1 the Lebesgue decomposition is known in closed form (density part
versus atoms), so the pencil engine can be checked against it.
"""

from logging import getLogger
from typing import Sequence

import numpy as np

from nclebesgue.services.lebesgue import decompose
from nclebesgue.services.ncmeasure import check_density, from_classical
from nclebesgue.types.measure import ClassicalMeasureSpec, MomentTable
from nclebesgue.types.reports import ConvergencePoint, OracleDecomposition, PencilComparison
from nclebesgue.types.word import Word

logger = getLogger(__name__)

DEFAULT_SCHEDULE = (16, 32, 64, 128)
GEOMETRIC_MEAN_SAMPLES = 8192


def oracle_decompose(spec: ClassicalMeasureSpec) -> OracleDecomposition:
    return OracleDecomposition(ac_spec=spec.density_part(), sing_spec=spec.atomic_part())


def compare_to_pencil(
    spec: ClassicalMeasureSpec,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    threshold: float | None = None,
    N_out: int | None = None,
) -> PencilComparison:
    """max_{k <= N_out} |μ_ac(k) − oracle μ_ac(k)| for each level of the schedule.

    Negative moments are conjugates of positive ones, so k >= 0 suffices.
    """
    schedule = sorted(schedule)
    N_out = schedule[0] - 1 if N_out is None else N_out
    measure = from_classical(spec, schedule[-1])
    oracle = from_classical(oracle_decompose(spec).ac_spec, N_out)
    points = []
    for N in schedule:
        result = decompose(measure, N, threshold, N_out)
        error = result.mu_ac.max_abs_difference(oracle, N_out)
        logger.info(f"oracle comparison at N={N}: max moment error {error:.6e}")
        points.append(ConvergencePoint(N=N, max_error=error))
    return PencilComparison(
        max_moment_error=points[-1].max_error, N_out=N_out, error_by_N=points
    )


def semicircle_moments(upper: bool, depth: int) -> MomentTable:
    """Lebesgue measure restricted to the upper (or lower) half circle."""
    moments = {Word(): 0.5 + 0j}
    for k in range(1, depth + 1):
        # ∫_0^π e^{ikθ} dθ/2π = ((−1)^k − 1)/(2πik)
        value = ((-1) ** k - 1) / (2j * np.pi * k)
        if not upper:
            value = -value
        if value != 0:
            moments[Word(letters=(1,) * k)] = complex(value)
    return MomentTable(d=1, depth=depth, moments=moments)


def szego_geometric_mean(spec: ClassicalMeasureSpec, samples: int = GEOMETRIC_MEAN_SAMPLES) -> float:
    """exp ∫ log w dm for the density part; atoms do not contribute."""
    if not spec.has_density:
        return 0.0
    check_density(spec)
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    with np.errstate(divide="ignore"):
        logs = np.log(np.clip(spec.density(theta), 0.0, None))
    return float(np.exp(logs.mean()))
