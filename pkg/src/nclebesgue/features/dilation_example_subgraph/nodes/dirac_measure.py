import logging

from nclebesgue.services.freemonoid import enumerate_words
from nclebesgue.services.ncmeasure import from_scalar_point
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import CheckResult

logger = logging.getLogger(__name__)

DIRAC_POINT = (1.0, 0.0)
# Gram level when the run config leaves it unset.
DIRAC_LEVEL = 8


def build_dirac_measure(depth: int) -> MomentTable:
    """Point mass at the boundary point (1, 0) of the row ball, d = 2."""
    return from_scalar_point(DIRAC_POINT, depth)


def check_moment_table(measure: MomentTable, level: int) -> CheckResult:
    """μ(L^α) is 0 when the letter 2 occurs in α and 1 otherwise."""
    worst = 0.0
    for word in enumerate_words(measure.d, level):
        expected = 0.0 if 2 in word.letters else 1.0
        worst = max(worst, abs(measure.moment(word) - expected))
    logger.info(f"moment table to length {level}: max deviation {worst:.2e}")
    return CheckResult(name="moment_table", passed=worst == 0.0, value=worst, bound=0.0)
