import logging

from nclebesgue.services.lebesgue import classify, decompose
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import CheckResult

logger = logging.getLogger(__name__)

MAX_AC_MASS = 0.1
LEVEL_STEP = 2


def comparison_levels(level: int) -> list[int]:
    """The level itself and the two even steps below it, e.g. 4, 6, 8."""
    return [n for n in (level - 2 * LEVEL_STEP, level - LEVEL_STEP, level) if n >= 1]


def run_decomposition_checks(measure: MomentTable, level: int) -> list[CheckResult]:
    result = decompose(measure, level)
    classification = classify(measure, level, result=result)
    ac_by_level = {}
    for n in comparison_levels(level):
        ac_by_level[n] = abs(result.ac_mass) if n == level else abs(decompose(measure, n).ac_mass)
    masses = list(ac_by_level.values())
    decreasing = all(b <= a + 1e-12 for a, b in zip(masses, masses[1:]))
    logger.info(
        f"Dirac decomposition at level {level}: {classification.verdict}, "
        f"|ac mass| by level {ac_by_level}"
    )
    return [
        CheckResult(
            name="decompose_verdict",
            passed=classification.verdict == "SINGULAR" and result.ac_mass <= MAX_AC_MASS,
            value=result.ac_mass,
            bound=MAX_AC_MASS,
            detail={"verdict": classification.verdict, "sing_mass": result.sing_mass},
        ),
        CheckResult(
            name="ac_mass_non_increasing",
            passed=decreasing,
            detail={"abs_ac_mass_by_level": ac_by_level},
        ),
    ]
