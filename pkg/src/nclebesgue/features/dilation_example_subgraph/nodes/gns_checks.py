import logging

from nclebesgue.services.gns import (
    column_extreme_distance,
    cuntz_defect,
    gns_row_isometry,
    gns_space,
    wandering_test,
)
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import CheckResult
from nclebesgue.types.word import Word

logger = logging.getLogger(__name__)

WANDERING_TOL = 1e-12
CUNTZ_TOL = 1e-8
COLUMN_EXTREME_TOL = 1e-8
ISOMETRY_TOL = 1e-10


def run_gns_checks(measure: MomentTable, level: int) -> list[CheckResult]:
    space = gns_space(measure, level)
    isometry = gns_row_isometry(space)

    wandering = wandering_test(space, space.coords(Word.of(2)), isometry=isometry)
    # The constant function is fixed by Π_1, so it must fail the same test.
    cyclic = wandering_test(space, space.cyclic, isometry=isometry)
    defect = cuntz_defect(space, isometry)
    distance = column_extreme_distance(space)
    isometry_defect = isometry.isometry_defect()
    logger.info(
        f"wandering violation {wandering.max_violation:.2e}, Cuntz defect {defect:.2e}, "
        f"column-extreme distance {distance:.2e}"
    )
    return [
        CheckResult(
            name="isometry_defect",
            passed=isometry_defect <= ISOMETRY_TOL,
            value=isometry_defect,
            bound=ISOMETRY_TOL,
        ),
        CheckResult(
            name="wandering_word_2",
            passed=wandering.is_wandering and wandering.max_violation <= WANDERING_TOL,
            value=wandering.max_violation,
            bound=WANDERING_TOL,
            detail={"norm_squared": wandering.norm_squared, "depth": wandering.depth},
        ),
        CheckResult(
            name="cyclic_not_wandering",
            passed=not cyclic.is_wandering,
            value=cyclic.max_violation,
        ),
        CheckResult(name="cuntz_defect", passed=defect <= CUNTZ_TOL, value=defect, bound=CUNTZ_TOL),
        CheckResult(
            name="column_extreme_distance",
            passed=distance <= COLUMN_EXTREME_TOL,
            value=distance,
            bound=COLUMN_EXTREME_TOL,
        ),
    ]
