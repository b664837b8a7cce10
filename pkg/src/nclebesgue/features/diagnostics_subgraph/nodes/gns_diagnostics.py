import logging

from nclebesgue.services.gns import gns_report, gns_space
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import GnsReport

logger = logging.getLogger(__name__)


def gns_diagnostics(measure: MomentTable, level: int) -> GnsReport:
    report = gns_report(gns_space(measure, level))
    logger.info(
        f"GNS level {level}: rank {report.rank}, isometry defect {report.isometry_defect:.2e}, "
        f"Cuntz defect {report.cuntz_defect:.3e}, "
        f"column-extreme distance {report.column_extreme_distance:.6f}"
    )
    return report
