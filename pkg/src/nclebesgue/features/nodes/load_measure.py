import logging
from pathlib import Path

from nclebesgue.services.ncmeasure import (
    MAX_POINT_WORDS,
    build_measure,
    buildable_depth,
    load_measure_spec,
)
from nclebesgue.types.measure import MeasureSpec, MomentTable

logger = logging.getLogger(__name__)


def load_measure(
    spec_path: str | Path,
    depth: int | None = None,
    level: int | None = None,
    min_depth: int = 0,
    max_words: int = MAX_POINT_WORDS,
) -> tuple[MeasureSpec, MomentTable, int]:
    """Parse a spec file, resolve the Gram level and build moments deep enough for it.

    An unset ``level`` falls back to the spec's own ``level`` (its depth when absent).
    ``min_depth`` is a wish, not a requirement: it is lowered to what the spec can
    build within ``max_words``.
    """
    spec = load_measure_spec(spec_path)
    level = spec.check_level if level is None else level
    if depth is None:
        reachable = buildable_depth(spec, min_depth, max_words)
        if reachable < min_depth:
            logger.warning(
                f"{spec.kind} spec only builds to depth {reachable} within {max_words} words "
                f"(asked for {min_depth})"
            )
        depth = max(spec.depth, level, reachable)
    measure = build_measure(spec, depth)
    logger.info(
        f"Loaded {spec.kind} measure {spec.name or Path(spec_path).stem}: "
        f"d={measure.d}, depth={measure.depth}, level={level}, "
        f"{len(measure.moments)} nonzero moments"
    )
    return spec, measure, level
