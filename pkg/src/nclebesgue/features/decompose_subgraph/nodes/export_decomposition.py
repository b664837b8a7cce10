import logging
from pathlib import Path

from nclebesgue.types.reports import DecompositionResult
from nclebesgue.utils.plotting import plot_pencil_spectrum
from nclebesgue.utils.report_io import save_frame, spectrum_frame

logger = logging.getLogger(__name__)


def export_decomposition(
    result: DecompositionResult, output_dir: str | Path, stem: str, plot: bool = False
) -> dict[str, str]:
    output_dir = Path(output_dir)
    paths = {
        "mu_ac_csv": result.mu_ac.to_csv(output_dir / f"{stem}_mu_ac.csv"),
        "mu_s_csv": result.mu_s.to_csv(output_dir / f"{stem}_mu_s.csv"),
        "spectrum_csv": save_frame(
            spectrum_frame(result.pencil_spectrum), output_dir / f"{stem}_pencil_spectrum.csv"
        ),
    }
    if plot:
        paths["spectrum_png"] = plot_pencil_spectrum(
            result.pencil_spectrum, result.threshold, output_dir / f"{stem}_pencil_spectrum.png"
        )
    return {name: str(path) for name, path in paths.items()}
