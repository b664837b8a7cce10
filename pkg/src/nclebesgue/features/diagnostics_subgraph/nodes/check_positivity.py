import logging

from nclebesgue.services.ncmeasure import positivity_check
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import PositivityReport

logger = logging.getLogger(__name__)


def check_positivity(measure: MomentTable, level: int, tol: float) -> PositivityReport:
    level = min(level, measure.depth)
    report = positivity_check(measure, level, tol)
    if report.is_positive:
        logger.info(f"Gram at level {level} is PSD (min eigenvalue {report.min_eigenvalue:.3e})")
    else:
        logger.warning(
            f"Gram at level {level} has negative eigenvalue {report.min_eigenvalue:.3e}"
        )
    return report
