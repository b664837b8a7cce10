import logging

from nclebesgue.services.lebesgue import classify, decompose
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import ClassificationReport, DecompositionResult

logger = logging.getLogger(__name__)


def run_decomposition(
    measure: MomentTable, level: int, threshold: float | None, out_depth: int | None
) -> tuple[DecompositionResult, ClassificationReport]:
    result = decompose(measure, level, threshold, out_depth)
    classification = classify(measure, level, result=result)
    logger.info(
        f"level {level}: singular rank {result.singular_rank}, ac mass {result.ac_mass:.6f}, "
        f"singular mass {result.sing_mass:.6f} -> {classification.verdict}"
    )
    return result, classification
