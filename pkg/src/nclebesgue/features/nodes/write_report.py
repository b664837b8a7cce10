import logging
from pathlib import Path
from typing import Any

from nclebesgue import __version__
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.report_io import config_hash, save_report

logger = logging.getLogger(__name__)


def write_report(
    name: str,
    config: RunConfig,
    results: dict[str, Any],
    passed: bool,
    execution_time: dict | None = None,
    tolerances: dict[str, float] | None = None,
) -> Path:
    report = {
        "name": name,
        "status": "PASSED" if passed else "FAILED",
        "version": __version__,
        "config": config,
        "config_hash": config_hash(config),
        "seed": config.seed,
        "tolerances": {"tol": config.tol, **(tolerances or {})},
        "results": results,
        "execution_time": execution_time or {},
    }
    return save_report(report, Path(config.out) / f"{name}_report.json")
