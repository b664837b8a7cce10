import logging
from pathlib import Path

from nclebesgue.services.classical import compare_to_pencil, szego_geometric_mean
from nclebesgue.services.ncmeasure import MeasureSpecError
from nclebesgue.types.measure import ClassicalSpec, MeasureSpec
from nclebesgue.types.reports import PencilComparison
from nclebesgue.utils.plotting import plot_convergence
from nclebesgue.utils.report_io import convergence_frame, save_frame

logger = logging.getLogger(__name__)


def run_oracle(
    spec: MeasureSpec, schedule: list[int], threshold: float | None, out_depth: int | None
) -> tuple[PencilComparison, float]:
    if not isinstance(spec, ClassicalSpec):
        raise MeasureSpecError(f"the oracle needs a classical spec, got kind {spec.kind!r}")
    comparison = compare_to_pencil(spec.measure, schedule, threshold, out_depth)
    return comparison, szego_geometric_mean(spec.measure)


def export_convergence(
    comparison: PencilComparison, output_dir: str | Path, stem: str, plot: bool = False
) -> dict[str, str]:
    output_dir = Path(output_dir)
    paths = {
        "convergence_csv": save_frame(
            convergence_frame(comparison.error_by_N), output_dir / f"{stem}_convergence.csv"
        )
    }
    if plot:
        paths["convergence_png"] = plot_convergence(
            [p.N for p in comparison.error_by_N],
            [p.max_error for p in comparison.error_by_N],
            output_dir / f"{stem}_convergence.png",
        )
    return {name: str(path) for name, path in paths.items()}
