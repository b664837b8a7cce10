import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)


def plot_pencil_spectrum(spectrum: list[float], threshold: float, path: str | Path) -> Path:
    """Sorted pencil eigenvalues on a log scale with the singular threshold."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(range(len(spectrum)), spectrum, marker=".", linestyle="none")
    ax.axhline(threshold, color="tab:red", linestyle="--", label=f"threshold {threshold:.3g}")
    ax.set_xlabel("index")
    ax.set_ylabel("pencil eigenvalue")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    logger.info(f"Plot saved to {path}")
    return path


def plot_convergence(levels: list[int], errors: list[float], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    positive = [max(e, 1e-17) for e in errors]
    ax.loglog(levels, positive, marker="o")
    ax.set_xlabel("Gram level N")
    ax.set_ylabel("max moment error of μ_ac")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    logger.info(f"Plot saved to {path}")
    return path
