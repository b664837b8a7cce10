import logging
from pathlib import Path

from nclebesgue.types.measure import MomentTable

logger = logging.getLogger(__name__)


def export_moments(measure: MomentTable, output_dir: str | Path, stem: str) -> Path:
    """Write the table as (word, re, im) rows in degree-lex order."""
    path = measure.to_csv(Path(output_dir) / f"{stem}_moments.csv")
    logger.info(f"Wrote {len(measure.moments)} nonzero moments to {path}")
    return path
